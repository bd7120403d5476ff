// Small library tour: build the PR box, watch the CHSH value cross the
// local bound as noise decreases, and ask the membership test for an
// exact separating facet.

#include <iostream>

#include "bellpoly/bellpoly.hpp"

using namespace bellpoly;

int main() {
    Scenario s{{{2, 2}, {2, 2}}};
    std::cout << "scenario " << s.str() << ", dimension " << dimension(s) << ", "
              << s.vertex_count() << " vertices\n\n";

    // the PR box: P(ab|xy) = 1/2 when the outcome parity equals x*y
    FullLayout fl(s);
    Behavior pr{s, std::vector<Rat>(size_t(fl.size), Rat(0))};
    fl.for_each([&](const std::vector<int>& x, const std::vector<int>& a, long long flat) {
        if (((a[0] - 1) ^ (a[1] - 1)) == (x[0] - 1) * (x[1] - 1))
            pr.table[size_t(flat)] = make_rat(1, 2);
    });
    validate_behavior(pr);

    BellInequality chsh = make(FamilyId::chsh());
    std::cout << "CHSH value of the PR box: " << rat_to_string(evaluate(chsh, pr))
              << " (local bound " << local_bound(chsh).get_str() << ")\n\n";

    Behavior u = uniform_behavior(s);
    for (long num : {1, 2, 3}) {
        Rat v(num, 4);
        Behavior noisy{s, std::vector<Rat>(pr.table.size(), Rat(0))};
        for (size_t k = 0; k < noisy.table.size(); ++k)
            noisy.table[k] = v * pr.table[k] + (1 - v) * u.table[k];
        auto r = membership(noisy);
        std::cout << "visibility " << rat_to_string(v) << ": ";
        if (auto* loc = std::get_if<LocalDecomposition>(&r)) {
            std::cout << "local, decomposed over " << loc->weights.size() << " vertices\n";
        } else {
            auto& nl = std::get<NonLocality>(r);
            std::cout << "nonlocal, separated by [" << render(nl.separating) << "], class "
                      << label_name(classify(nl.separating)) << "\n";
        }
    }
    return 0;
}
