#pragma once

#include "wrenyi/density.hpp"
#include "wrenyi/weight.hpp"

namespace wrenyi {

// f_phi = phi f / chi with chi = E_f[phi]; chi is recorded as parameter "chi".
// Throws DomainError when chi is zero or not finite.
Density make_weighted_density(const Density& f, const WeightFunction& phi);

}  // namespace wrenyi
