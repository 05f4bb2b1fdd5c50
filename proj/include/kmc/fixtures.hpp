#pragma once

#include <string>
#include <vector>

#include "kmc/cartan.hpp"

namespace kmc {

struct Fixture {
    std::string name;
    std::string matrix;
    RefinedClass refined;
};

/// At least one matrix per refined class, entries in [-4, 0].
inline const std::vector<Fixture>& fixture_corpus() {
    static const std::vector<Fixture> corpus{
        {"worked-example", "2,-1,-3;-3,2,-1;-2,-4,2", RefinedClass::iii},
        {"i-symmetric", "2,-2,-2;-2,2,-2;-2,-2,2", RefinedClass::i},
        {"i-odd", "2,-3,-3;-3,2,-3;-3,-2,2", RefinedClass::i},
        {"ii-relabel", "2,-2,-3;-3,2,-2;-2,-1,2", RefinedClass::ii},
        {"ii-symmetrizable", "2,-1,-2;-1,2,-2;-2,-2,2", RefinedClass::ii},
        {"iii-relabel", "2,-3,-3;-1,2,-4;-3,-3,2", RefinedClass::iii},
        {"iv", "2,-2,-1;-1,2,-3;-1,-4,2", RefinedClass::iv},
        {"iv-a2-pair", "2,-1,-1;-1,2,-1;-4,-1,2", RefinedClass::iv},
        {"v-relabel", "2,-2,-3;-1,2,-3;-2,-1,2", RefinedClass::v},
        {"vi", "2,-3,-1;-1,2,-3;-3,-2,2", RefinedClass::vi},
        {"vii", "2,-2,-2;-1,2,-2;-1,-1,2", RefinedClass::vii},
        {"vii-affine", "2,-2,-2;-1,2,0;-1,0,2", RefinedClass::vii},
        {"vii-affine-cycle", "2,-1,-1;-1,2,-1;-1,-1,2", RefinedClass::vii},
        {"viii", "2,-3,-2;-1,2,-2;-1,-1,2", RefinedClass::viii},
        {"viii-affine", "2,-1,0;-1,2,-3;0,-1,2", RefinedClass::viii},
        {"ix", "2,-1,-3;-3,2,-1;-1,-2,2", RefinedClass::ix},
        {"x", "2,-3,-3;-1,2,-3;-1,-1,2", RefinedClass::x},
    };
    return corpus;
}

/// Matrices with a12*a21 >= 4 whose columns 1 and 2 each hold an odd entry, so
/// neither sigma_1 nor sigma_2 degenerates mod 2.
inline const std::vector<std::string>& infinite_pair_samples() {
    static const std::vector<std::string> samples{
        "2,-1,-1;-4,2,-1;-1,-1,2", "2,-3,-2;-3,2,-1;-1,-1,2", "2,-4,-1;-1,2,-1;-1,-1,2",
        "2,-3,-3;-3,2,-3;-3,-2,2", "2,-2,-1;-3,2,-1;-1,-1,2"};
    return samples;
}

} // namespace kmc
