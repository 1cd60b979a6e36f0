// Exact correlation defects of the cylinder [0] at level 7.

#include <iostream>

#include "staircase/staircase.hpp"

using namespace staircase;

int main() {
    ParamTable p = build_params({}, 6);
    MeasureContext ctx(p, 7);
    const BitVec zero = BitVec::from_string("0");
    std::cout << "t      joint/windows       defect\n";
    for (std::uint64_t t : {1, 5, 11, 50, 62, 384, 2706}) {
        CorrelationRecord rec = ctx.correlation(zero, zero, t);
        std::cout << t << "  " << rec.count_joint << '/' << rec.windows << "  " << to_decimal(rec.defect, 8) << '\n';
    }
}
