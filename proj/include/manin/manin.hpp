#pragma once

#include "manin/brauer.hpp"
#include "manin/constant.hpp"
#include "manin/enumerator.hpp"
#include "manin/euler_products.hpp"
#include "manin/local_densities.hpp"
#include "manin/number_theory.hpp"
#include "manin/real_density.hpp"
#include "manin/surface.hpp"
#include "manin/zeta_residues.hpp"
