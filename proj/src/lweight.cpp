#include "qloop/lweight.hpp"

#include <algorithm>
#include <sstream>

namespace qloop {

RationalFunction::RationalFunction(AffineExponent prefactor, std::vector<LinearFactor> num,
                                   std::vector<LinearFactor> den)
    : prefactor_(std::move(prefactor)), num_(std::move(num)), den_(std::move(den)) {
    canonicalize();
}

void RationalFunction::canonicalize() {
    std::sort(num_.begin(), num_.end());
    std::sort(den_.begin(), den_.end());
    // Multiset cancellation: remove factors common to numerator and
    // denominator (exponents equal as affine expressions).
    std::vector<LinearFactor> n2, d2;
    n2.reserve(num_.size());
    d2.reserve(den_.size());
    size_t i = 0, j = 0;
    while (i < num_.size() && j < den_.size()) {
        if (num_[i] == den_[j]) {
            ++i;
            ++j;
        } else if (num_[i] < den_[j]) {
            n2.push_back(num_[i++]);
        } else {
            d2.push_back(den_[j++]);
        }
    }
    n2.insert(n2.end(), num_.begin() + static_cast<long>(i), num_.end());
    d2.insert(d2.end(), den_.begin() + static_cast<long>(j), den_.end());
    num_ = std::move(n2);
    den_ = std::move(d2);
}

RationalFunction RationalFunction::inverse() const {
    RationalFunction r;
    r.prefactor_ = -prefactor_;
    r.num_ = den_;
    r.den_ = num_;
    return r;  // already sorted and disjoint
}

RationalFunction RationalFunction::substitute(const std::map<Symbol, Rational>& bindings) const {
    std::vector<LinearFactor> n, d;
    n.reserve(num_.size());
    d.reserve(den_.size());
    for (const auto& f : num_) n.push_back({f.exponent.substitute(bindings)});
    for (const auto& f : den_) d.push_back({f.exponent.substitute(bindings)});
    return RationalFunction(prefactor_.substitute(bindings), std::move(n), std::move(d));
}

RationalFunction rf_mul(const RationalFunction& a, const RationalFunction& b) {
    std::vector<LinearFactor> n = a.num_;
    n.insert(n.end(), b.num_.begin(), b.num_.end());
    std::vector<LinearFactor> d = a.den_;
    d.insert(d.end(), b.den_.begin(), b.den_.end());
    return RationalFunction(a.prefactor_ + b.prefactor_, std::move(n), std::move(d));
}

std::string RationalFunction::str() const {
    if (is_one()) return "1";
    std::ostringstream os;
    bool lead = true;
    if (!prefactor_.is_zero()) {
        os << "q^{" << prefactor_.str() << "}";
        lead = false;
    }
    for (const auto& f : num_) {
        if (!lead) os << " ";
        os << f.str();
        lead = false;
    }
    if (!den_.empty()) {
        if (lead) os << "1";
        os << " / ";
        for (size_t i = 0; i < den_.size(); ++i) {
            if (i) os << " ";
            os << den_[i].str();
        }
    }
    return os.str();
}

Weight& Weight::operator+=(const Weight& o) {
    if (omega.size() != o.omega.size()) throw std::invalid_argument("Weight: rank mismatch");
    for (size_t i = 0; i < omega.size(); ++i) omega[i] += o.omega[i];
    return *this;
}

Weight& Weight::operator-=(const Weight& o) {
    if (omega.size() != o.omega.size()) throw std::invalid_argument("Weight: rank mismatch");
    for (size_t i = 0; i < omega.size(); ++i) omega[i] -= o.omega[i];
    return *this;
}

Weight Weight::operator-() const {
    Weight w(*this);
    for (auto& c : w.omega) c = -c;
    return w;
}

Weight Weight::substitute(const std::map<Symbol, Rational>& bindings) const {
    Weight w(*this);
    for (auto& c : w.omega) c = c.substitute(bindings);
    return w;
}

std::string Weight::str() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < omega.size(); ++i) {
        if (i) os << ", ";
        os << omega[i].str();
    }
    os << "]";
    return os.str();
}

LWeight LWeight::inverse() const {
    LWeight r;
    r.weight = -weight;
    r.plus.reserve(plus.size());
    for (const auto& p : plus) r.plus.push_back(p.inverse());
    return r;
}

LWeight LWeight::substitute(const std::map<Symbol, Rational>& bindings) const {
    LWeight r;
    r.weight = weight.substitute(bindings);
    r.plus.reserve(plus.size());
    for (const auto& p : plus) r.plus.push_back(p.substitute(bindings));
    return r;
}

std::string LWeight::str() const {
    std::ostringstream os;
    os << "{weight: " << weight.str() << ", series: [";
    for (size_t i = 0; i < plus.size(); ++i) {
        if (i) os << ", ";
        os << plus[i].str();
    }
    os << "]}";
    return os.str();
}

LWeight lw_mul(const LWeight& a, const LWeight& b) {
    if (a.rank() != b.rank()) throw std::invalid_argument("lw_mul: rank mismatch");
    LWeight r;
    r.weight = a.weight + b.weight;
    r.plus.reserve(a.plus.size());
    for (size_t i = 0; i < a.plus.size(); ++i) r.plus.push_back(rf_mul(a.plus[i], b.plus[i]));
    return r;
}

LWeight lw_specialize(const LWeight& a, const std::map<Symbol, Rational>& bindings) {
    return a.substitute(bindings);
}

LWeight lw_shift(const LWeight& a, const Weight& xi) {
    LWeight r(a);
    r.weight += xi;
    return r;
}

}  // namespace qloop
