#pragma once

#include <initializer_list>
#include <map>
#include <string>
#include <string_view>
#include <utility>

namespace ucp {

/// Signed exponent vector over unit symbols: the element of the free abelian
/// group that tracks a quantity's dimensions. A numerator unit carries +1, a
/// denominator unit -1; general integers are admitted. Zero exponents are
/// never stored, so the empty vector is the unique dimensionless value.
/// Symbols compare by exact bytes ("dozen" and "dozens" are distinct units).
/// Instances are immutable after construction and safe to share across threads.
class UnitVector {
public:
    UnitVector() = default;
    UnitVector(std::initializer_list<std::pair<const char*, int>> exps) {
        for (const auto& [sym, exp] : exps) add(sym, exp);
    }

    const std::map<std::string, int>& exponents() const { return exponents_; }
    bool dimensionless() const { return exponents_.empty(); }
    int exponent_of(const std::string& symbol) const {
        auto it = exponents_.find(symbol);
        return it == exponents_.end() ? 0 : it->second;
    }

    /// Multiplication of quantities: exponents add, so reciprocal units cancel.
    UnitVector combine(const UnitVector& other) const;
    /// Division of quantities: exponents subtract. difference(a, b) == combine(a, b.invert()).
    UnitVector difference(const UnitVector& other) const;
    /// Reciprocal: every exponent negated.
    UnitVector invert() const;

    friend bool operator==(const UnitVector&, const UnitVector&) = default;

    /// Dialect literal form with sorted symbols: Counter({"a": 1, "b": -1}),
    /// or Counter() when dimensionless.
    std::string to_string() const;

private:
    void add(std::string symbol, int delta);

    std::map<std::string, int> exponents_;
};

// The program dialect spells combine as + and difference as -.
inline UnitVector operator+(const UnitVector& a, const UnitVector& b) { return a.combine(b); }
inline UnitVector operator-(const UnitVector& a, const UnitVector& b) { return a.difference(b); }

}  // namespace ucp
