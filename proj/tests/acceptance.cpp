// Acceptance suite runner: one pass/fail line per criterion, nonzero exit on
// any failure. The same checks back the `suite` CLI verb.

#include <iostream>

#include "sumrank/suite.hpp"

int main() {
    sumrank::SuiteOptions opt;  // full desk scale: q <= 3, m <= 3, k <= 3
    try {
        auto results = sumrank::run_acceptance_suite(opt);
        int failures = sumrank::print_suite_results(results, std::cout);
        std::cout << (failures == 0 ? "ALL CRITERIA PASS" : "FAILURES PRESENT") << "\n";
        return failures == 0 ? 0 : 1;
    } catch (const std::exception& ex) {
        std::cerr << "suite aborted: " << ex.what() << "\n";
        return 1;
    }
}
