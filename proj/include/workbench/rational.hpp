/// @file rational.hpp
/// Exact rational and big-integer number types plus canonical text form.
#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace workbench {

using Int = mpz_class;
using Rat = mpq_class;

/// Canonical text form: "p/q" in lowest terms with q > 0 ("0/1" for zero).
inline std::string rat_str(const Rat& value) {
    Rat r = value;
    r.canonicalize();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

/// Parses "p/q" or a bare integer "p". Throws std::invalid_argument on junk.
inline Rat rat_parse(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            Rat r{Int(text)};
            return r;
        }
        Int num(text.substr(0, slash));
        Int den(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator: " + text);
        Rat r(num, den);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw;
    } catch (const std::exception&) {
        throw std::invalid_argument("bad rational literal: " + text);
    }
}

/// Floor of an exact rational as a big integer.
inline Int rat_floor(const Rat& value) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), value.get_num().get_mpz_t(), value.get_den().get_mpz_t());
    return q;
}

}  // namespace workbench
