#include "qloop/affine.hpp"

#include <sstream>

namespace qloop {

AffineExponent AffineExponent::substitute(const std::map<Symbol, Rational>& bindings) const {
    AffineExponent out(constant_);
    for (const auto& [s, c] : coeffs_) {
        auto it = bindings.find(s);
        if (it != bindings.end()) {
            out.constant_ += c * it->second;
        } else {
            out.coeffs_[s] = c;
        }
    }
    return out;
}

Rational AffineExponent::evaluate(const std::map<Symbol, Rational>& bindings) const {
    AffineExponent e = substitute(bindings);
    if (!e.is_constant())
        throw std::invalid_argument("AffineExponent::evaluate: unbound symbol in " + str());
    return e.constant();
}

std::string AffineExponent::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [s, c] : coeffs_) {
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        Rational a = abs(c);
        if (a != 1) os << rational_str(a) << "*";
        os << s;
        first = false;
    }
    if (constant_ != 0) {
        if (first) {
            os << rational_str(constant_);
        } else {
            os << (constant_ < 0 ? " - " : " + ") << rational_str(abs(constant_));
        }
    }
    return os.str();
}

}  // namespace qloop
