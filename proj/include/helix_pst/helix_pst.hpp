#pragma once

#include "helix_pst/core.hpp"
#include "helix_pst/hamiltonian.hpp"
#include "helix_pst/spectral.hpp"
#include "helix_pst/transfer.hpp"
#include "helix_pst/attainability.hpp"
#include "helix_pst/scan.hpp"
