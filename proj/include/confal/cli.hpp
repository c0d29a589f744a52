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


#ifndef CONFAL_CLI_HPP
#define CONFAL_CLI_HPP

#include <iosfwd>

namespace confal {

inline constexpr const char* kToolVersion = "1.0.0";

/// Entry point of the confal command line. Exit codes: 0 all checks pass,
/// 1 some check fails or is undecided, 2 the input could not be used.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace confal

#endif  // CONFAL_CLI_HPP
