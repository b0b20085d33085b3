#include "ucp/unit_vector.hpp"

#include <sstream>

namespace ucp {

void UnitVector::add(std::string symbol, int delta) {
    if (delta == 0) return;
    auto [it, inserted] = exponents_.try_emplace(std::move(symbol), delta);
    if (!inserted) {
        it->second += delta;
        if (it->second == 0) exponents_.erase(it);
    }
}

UnitVector UnitVector::combine(const UnitVector& other) const {
    UnitVector out = *this;
    for (const auto& [sym, exp] : other.exponents_) out.add(sym, exp);
    return out;
}

UnitVector UnitVector::difference(const UnitVector& other) const {
    UnitVector out = *this;
    for (const auto& [sym, exp] : other.exponents_) out.add(sym, -exp);
    return out;
}

UnitVector UnitVector::invert() const {
    UnitVector out;
    for (const auto& [sym, exp] : exponents_) out.exponents_.emplace(sym, -exp);
    return out;
}

std::string UnitVector::to_string() const {
    if (exponents_.empty()) return "Counter()";
    std::ostringstream os;
    os << "Counter({";
    bool first = true;
    for (const auto& [sym, exp] : exponents_) {
        if (!first) os << ", ";
        first = false;
        os << '"' << sym << "\": " << exp;
    }
    os << "})";
    return os.str();
}

}  // namespace ucp
