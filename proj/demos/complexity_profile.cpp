// Compares the enumerated complexity with the closed form and shows the increment pattern.

#include <iostream>

#include "staircase/staircase.hpp"

using namespace staircase;

int main() {
    ParamTable p = build_params({}, 6);
    auto oracle = complexity_profile_bruteforce(p, 40);
    std::cout << "q   p(q)  closed  increment\n";
    for (const auto& e : oracle.entries) {
        std::cout << e.q << "   " << e.p << "   " << complexity_closed_form(p, e.q);
        if (e.q < 40) {
            Increment inc = increment(p, e.q);
            std::cout << "   +" << inc.delta << " (" << tag_name(inc.tag) << ")";
        }
        std::cout << '\n';
    }

    RecipeSpec spec;
    spec.kind = RecipeKind::theorem2;
    spec.epsilon = Rational(1);
    ParamTable deep = build_params(spec, 10);
    std::cout << "\ntheorem2 recipe, p(10^6) = " << complexity_closed_form(deep, BigInt(1000000)) << '\n';
}
