#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "wrenyi/density.hpp"
#include "wrenyi/weight.hpp"

// Text forms used on the command line and in scenario files.
//
// densities: exp:lambda  laplace:b  tent  uniform  gg:alpha,p[,t]
//            scaled:s;<density>  cosmod:eps,omega;<density>
//            weighted:<density>;<weight>  table:<path>
// weights:   const:v  expw:gamma  pow:c  abspoly:a0,a1,...
//            fpoly:b0,b1,...  fpow:k,m   (the last two need a density)
//
// Reals accept "inf" and "-inf". Malformed text throws InputError.
namespace wrenyi {

double parse_real(std::string_view text, std::string_view what);
std::vector<double> parse_real_list(std::string_view text, std::string_view what);

Density parse_density(std::string_view text);
// f is the density that fpoly/fpow weights are built on; nullptr rejects them.
WeightFunction parse_weight(std::string_view text, const Density* f = nullptr);

}  // namespace wrenyi
