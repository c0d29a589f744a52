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


#ifndef CONFAL_CLASSIFIER_HPP
#define CONFAL_CLASSIFIER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "confal/conformal_module.hpp"

namespace confal {

enum class StepRule { TopIndexAssumed, DelIndependence, MuZeroKill, ShiftInvarianceConst, CrossRelationKill };
const char* to_string(StepRule rule);

struct DerivationStep {
    StepRule rule;
    long index;               // generator index the step is about
    std::vector<Poly> inputs;
    Poly residual;            // polynomial the conclusion is read from
    std::string output;       // "f = 0", "f = beta", ...
};

enum class IndexOutcome { ActsByZero, Constant, Undecided };
const char* to_string(IndexOutcome outcome);

struct FamilyPattern {
    ModuleFamily family;
    std::string irreducible_when;
    friend bool operator==(const FamilyPattern&, const FamilyPattern&) = default;
};

struct ClassificationReport {
    Rat p;
    long top_index_range = 0;
    unsigned degree_bound = 0;
    std::optional<unsigned> bn;  // set when run against b(n)
    std::vector<FamilyPattern> families;
    std::vector<DerivationStep> steps;
    std::vector<std::string> caveats;
    std::vector<long> undecided;  // top indices the pipeline could not settle
    std::size_t falsification_samples = 0;
    std::size_t falsification_violations = 0;
};

struct ClassifierOptions {
    std::uint64_t seed = 20240607;
    std::size_t samples_per_index = 8;
};

/// Residual of the (0,k) module identity for L_0 -> pD, L_k -> x^t:
/// ((k+p)x - py)(x+y)^t + py y^t.
Poly top_index_residual(const ConformalAlgebra& alg, long k, unsigned t);

/// f(D,x) f(D+x,y) - f(D,y) f(D+y,x), computed through the (k,k) module identity.
Poly symmetry_residual(const ConformalAlgebra& alg, long k, const Poly& f);

/// Basis of { f in Q[x]_{<=D} : f(x+y) = f(y) }, as coefficient vectors in 1, x, ..., x^D.
std::vector<std::vector<Rat>> shift_kernel(unsigned degree);

ClassificationReport classify_rank_one(const Rat& p, long K, unsigned D, const ClassifierOptions& options = {});

/// The same pipeline over b(n), p = -n, K = n.
ClassificationReport classify_bn(unsigned n, unsigned D, const ClassifierOptions& options = {});

struct VerifyOutcome {
    bool ok = true;
    std::vector<std::string> problems;
};

/// Instantiates every family on a parameter grid and reruns the module and
/// irreducibility checks, plus the falsification fixtures.
VerifyOutcome verify_report(const ClassificationReport& report);

}  // namespace confal

#endif  // CONFAL_CLASSIFIER_HPP
