#include "sdlab/box.hpp"

#include <algorithm>
#include <set>

namespace sdlab {

std::vector<Rational> TestBox::points() const {
    if (bound < 0) throw InvalidParams("box bound must be >= 0");
    raw_count();  // enforce the enumeration cap
    std::set<Rational> pts;
    std::vector<int> c(generators.size(), -bound);
    while (true) {
        Rational y = 0;
        for (std::size_t i = 0; i < generators.size(); ++i) y += Rational(c[i]) * generators[i];
        pts.insert(y);
        std::size_t i = 0;
        for (; i < c.size(); ++i) {
            if (c[i] < bound) {
                ++c[i];
                break;
            }
            c[i] = -bound;
        }
        if (i == c.size()) break;
    }
    if (generators.empty()) pts.insert(Rational(0));
    return {pts.begin(), pts.end()};
}

}  // namespace sdlab
