#pragma once

#include <string>
#include <vector>

#include "sammy/lang.hpp"

namespace sammy {

/// Names of the shipped macro programs (files under the macro directory).
const std::vector<std::string>& stdlib_names();

/// Raw source of a shipped macro. The directory is baked in at build time
/// and can be overridden with the SAMMY_MACRO_DIR environment variable.
std::string stdlib_source(const std::string& name);
SammyProgram stdlib_program(const std::string& name);

/// Straight-line program producing the pointed n-object chain by doubling
/// and gluing along the binary digits of n-1. Statement count is
/// logarithmic in n.
std::string binary_encode_source(long n);

/// The unary variant: n-1 single gluings. Statement count is linear in n.
std::string number_triple_source(long n);

/// Successor endofunctor of the n-object chain (fixes the last object);
/// input material for the binary reader.
FunctorData chain_successor(int n);

/// Bit functor chain -> IsoTwo encoding n-1 most significant bit first.
FunctorData chain_bits(long n);

}  // namespace sammy
