#include "flowsched/rational.hpp"

#include <ostream>

namespace flowsched {

Rational::Rational(long num, long den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational Rational::parse(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    const auto slash = text.find('/');
    const std::string num = text.substr(0, slash);
    const std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
    auto is_int = [](const std::string& s) {
        if (s.empty()) return false;
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    if (!is_int(num) || !is_int(den))
        throw std::invalid_argument("bad rational literal '" + text + "' (want \"n\" or \"n/d\")");
    mpq_class q;
    if (q.set_str(num + "/" + den, 10) != 0)
        throw std::invalid_argument("bad rational literal '" + text + "'");
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    q.canonicalize();
    return Rational(std::move(q));
}

std::string Rational::str() const {
    return q_.get_str();
}

long Rational::to_long() const {
    if (!is_integer() || !q_.get_num().fits_slong_p())
        throw std::domain_error("rational " + str() + " is not a machine integer");
    return q_.get_num().get_si();
}

Rational Rational::floor() const {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q_.get_num().get_mpz_t(), q_.get_den().get_mpz_t());
    return Rational(mpq_class(f));
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("rational division by zero");
    q_ /= o.q_;
    return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
}

}  // namespace flowsched
