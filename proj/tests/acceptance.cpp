#include <iostream>

#include "kmc.hpp"

int main() {
    kmc::AcceptanceOptions opts;
    opts.on_result = [](const kmc::CriterionResult& r) { std::cout << r.line() << std::endl; };
    int failed = 0;
    for (const auto& r : kmc::run_acceptance(opts)) failed += !r.pass;
    std::cout << (failed ? std::to_string(failed) + " criteria FAILED" : std::string("all 9 criteria pass")) << "\n";
    return failed ? 1 : 0;
}
