/*
   Copyright 2026 The confal Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/


#ifndef CONFAL_SERIALIZE_HPP
#define CONFAL_SERIALIZE_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "confal/conformal_module.hpp"
#include "confal/finite_lie.hpp"
#include "confal/lie_conformal.hpp"

namespace confal {

/// Malformed definition file or command-line value (CLI exit code 2).
class InputError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Parses "3", "-1/2"; throws InputError naming `what` otherwise.
Rat parse_rat(std::string_view text, const std::string& what);

nlohmann::json algebra_to_json(const ConformalAlgebra& alg);
ConformalAlgebra algebra_from_json(const nlohmann::json& j);
ConformalAlgebra parse_algebra(std::string_view text);

/// Module files name generators of the algebra they act on.
nlohmann::json module_to_json(const ConformalModule& mod, const ConformalAlgebra& alg);
ConformalModule module_from_json(const nlohmann::json& j, const ConformalAlgebra& alg);
ConformalModule parse_module(std::string_view text, const ConformalAlgebra& alg);

std::string read_file(const std::string& path);

std::uint64_t fnv1a64(std::string_view data);
std::string hex64(std::uint64_t value);

/// One "[a,b]=value" line per defined pair, generator names as printed.
std::string canonical_table_text(const ConformalAlgebra& alg);

}  // namespace confal

#endif  // CONFAL_SERIALIZE_HPP
