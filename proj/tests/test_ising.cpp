// Copyright 2026 qpost developers
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#include <algorithm>
#include <cmath>

#include "catch2/catch_amalgamated.hpp"
#include "qpost/ising.hpp"
#include "test_support.hpp"

using namespace qpost;
using namespace qpost::testing;

TEST_CASE("energy of an empty Hamiltonian is zero", "[ising]") {
    const IsingModel model(3, {0.0, 0.0, 0.0}, {});
    CHECK(energy(model, sv({+1, -1, +1})) == 0.0);
    CHECK(energy(model, sv({-1, -1, -1})) == 0.0);
}

TEST_CASE("energy sums fields and couplers term by term", "[ising]") {
    const IsingModel model(2, {0.5, -0.25}, {{0, 1, -1.0}});
    const SpinVector z = sv({+1, +1});
    const double by_hand = 0.5 * 1 + (-0.25) * 1 + (-1.0) * 1 * 1;
    CHECK(by_hand == -0.75);
    CHECK(energy(model, z) == -0.75);

    const IsingModel chain = chain4();
    CHECK(energy(chain, sv({+1, +1, +1, +1})) == -1.0);
    CHECK(energy(chain, sv({+1, +1, +1, +1})) == naive_energy(chain, sv({+1, +1, +1, +1})));
}

TEST_CASE("energy rejects dimension mismatches", "[ising]") {
    const IsingModel model(2, {0.0, 0.0}, {});
    CHECK_THROWS_AS(energy(model, sv({+1})), DimensionError);
    CHECK_THROWS_AS(energy_delta_flip(model, sv({+1, -1}), 2), DimensionError);
    CHECK_THROWS_AS(energy_delta_flip(model, sv({+1, -1}), -1), DimensionError);
}

TEST_CASE("energy is independent of coupler storage order", "[ising]") {
    Rng rng(41);
    const IsingModel model = random_model(12, CoefficientClass::Normal, 7);
    std::vector<Coupler> reordered = model.couplers();
    std::reverse(reordered.begin(), reordered.end());
    std::swap(reordered.front(), reordered[reordered.size() / 2]);
    const IsingModel shuffled(model.num_spins(), model.fields(), reordered);
    for (int trial = 0; trial < 50; ++trial) {
        const SpinVector z = random_state(12, rng);
        CHECK(energy(model, z) == energy(shuffled, z));
    }
}

TEST_CASE("zero-field energy is invariant under global spin flip", "[ising]") {
    Rng rng(17);
    IsingModel model = random_model(10, CoefficientClass::Uniform, 3);
    const IsingModel no_fields(model.num_spins(), std::vector<double>(10, 0.0),
                               model.couplers());
    for (int trial = 0; trial < 50; ++trial) {
        SpinVector z = random_state(10, rng);
        SpinVector negated = z;
        for (int i = 0; i < z.size(); ++i) negated.flip(i);
        CHECK(energy(no_fields, z) == energy(no_fields, negated));
    }
}

TEST_CASE("single-flip delta matches full re-evaluation", "[ising]") {
    const IsingModel single(1, {1.0}, {});
    CHECK(energy_delta_flip(single, sv({+1}), 0) == -2.0);

    const IsingModel chain = chain4();
    CHECK(energy_delta_flip(chain, sv({-1, +1, +1, +1}), 0) == -2.0);

    Rng rng(99);
    const CoefficientClass classes[] = {CoefficientClass::Binary, CoefficientClass::Uniform,
                                        CoefficientClass::Normal};
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 4 + static_cast<int>(bounded(rng, 12));
        const IsingModel model = random_model(n, classes[trial % 3], 1000 + trial);
        SpinVector z = random_state(n, rng);
        const int i = static_cast<int>(bounded(rng, n));
        const double delta = energy_delta_flip(model, z, i);
        const double before = energy(model, z);
        SpinVector flipped = z;
        flipped.flip(i);
        const double after = energy(model, flipped);
        CHECK(std::abs(delta - (after - before)) <= 1e-9);
        // flip and flip back cancel
        CHECK(std::abs(delta + energy_delta_flip(model, flipped, i)) <= 1e-9);
    }
}

TEST_CASE("validate accepts canonical models and names the first violation", "[ising]") {
    const IsingModel good(3, {0.0, 0.5, -0.5}, {{0, 1, 1.0}, {1, 2, -0.5}});
    CHECK(good.validate().ok);

    const IsingModel swapped(3, {0.0, 0.0, 0.0}, {{2, 1, 0.5}});
    const ValidationResult r1 = swapped.validate();
    CHECK_FALSE(r1.ok);
    CHECK(r1.message.find("non-canonical") != std::string::npos);

    const IsingModel zero(2, {0.0, 0.0}, {{0, 1, 0.0}});
    const ValidationResult r2 = zero.validate();
    CHECK_FALSE(r2.ok);
    CHECK(r2.message.find("zero") != std::string::npos);

    const IsingModel dup(3, {0.0, 0.0, 0.0}, {{0, 1, 1.0}, {0, 1, 2.0}});
    const ValidationResult r3 = dup.validate();
    CHECK_FALSE(r3.ok);
    CHECK(r3.message.find("duplicate") != std::string::npos);
}

TEST_CASE("model construction rejects unsafe shapes", "[ising]") {
    CHECK_THROWS_AS(IsingModel(0, {}, {}), ContractError);
    CHECK_THROWS_AS(IsingModel(2, {0.0}, {}), DimensionError);
    CHECK_THROWS_AS(IsingModel(2, {0.0, 0.0}, {{0, 2, 1.0}}), DimensionError);
}

TEST_CASE("spin vectors enforce the two-valued alphabet", "[ising]") {
    CHECK_THROWS_AS(sv({+1, 0, -1}), ContractError);
    CHECK_THROWS_AS(sv({+2}), ContractError);
    CHECK(SpinVector::filled(3, -1) == sv({-1, -1, -1}));
}

TEST_CASE("sample sets require uniform lengths and at least one member", "[ising]") {
    CHECK_THROWS_AS(SampleSet({}), ContractError);
    CHECK_THROWS_AS(SampleSet({sv({+1, -1}), sv({+1})}), DimensionError);
    const SampleSet set({sv({+1, -1}), sv({+1, -1}), sv({-1, +1})});
    CHECK(set.size() == 3);
    CHECK(set.num_spins() == 2);
}

TEST_CASE("neighbor lists cover each coupler from both endpoints", "[ising]") {
    const IsingModel chain = chain4();
    REQUIRE(chain.neighbors(0).size() == 1);
    REQUIRE(chain.neighbors(1).size() == 2);
    CHECK(chain.neighbors(1)[0] == std::pair(0, -1.0));
    CHECK(chain.neighbors(1)[1] == std::pair(2, 1.0));
}
