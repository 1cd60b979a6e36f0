// Builds the demo table and prints the first words.

#include <iostream>

#include "staircase/staircase.hpp"

using namespace staircase;

int main() {
    ParamTable p = build_params({}, 6);
    std::cout << "n  r  c  h  m\n";
    for (std::size_t n = 1; n <= p.depth(); ++n)
        std::cout << n << "  " << p.r(n) << "  " << p.c(n) << "  " << p.h(n) << "  " << p.m(n) << '\n';
    std::cout << "h_7 = " << p.h(7) << "\n\n";
    for (std::size_t n = 1; n <= 3; ++n) std::cout << "B_" << n << " = " << build_word(p, n).to_string() << '\n';
}
