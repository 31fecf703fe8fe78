#include "rotor/rational.hpp"

#include "rotor/error.hpp"

#include <cmath>
#include <limits>

namespace rotor {

namespace {

bool all_digits(std::string_view s)
{
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

} // namespace

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::MalformedRational: return "MalformedRational";
    case ErrorCode::NonReducedRational: return "NonReducedRational";
    case ErrorCode::NegativeDenominator: return "NegativeDenominator";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::MissingKey: return "MissingKey";
    case ErrorCode::UnknownKey: return "UnknownKey";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::MissingZeroEndpoint: return "MissingZeroEndpoint";
    case ErrorCode::MissingUnitEndpoint: return "MissingUnitEndpoint";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::RefinementDiverged: return "RefinementDiverged";
    case ErrorCode::NonContiguousWeights: return "NonContiguousWeights";
    case ErrorCode::NoCycle: return "NoCycle";
    case ErrorCode::LengthCapExceeded: return "LengthCapExceeded";
    case ErrorCode::NonPrimitive: return "NonPrimitive";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::AlphaOutsideInterval: return "AlphaOutsideInterval";
    case ErrorCode::BracketFailure: return "BracketFailure";
    case ErrorCode::DegenerateEntry: return "DegenerateEntry";
    case ErrorCode::ZeroNotSimple: return "ZeroNotSimple";
    case ErrorCode::HorizonCapExceeded: return "HorizonCapExceeded";
    case ErrorCode::EpsilonTooLarge: return "EpsilonTooLarge";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail)
    , code_(code)
{
}

Rational parse_rational(std::string_view text)
{
    const auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);

    std::string_view num_digits = num;
    if (!num_digits.empty() && num_digits.front() == '-') num_digits.remove_prefix(1);
    if (!all_digits(num_digits))
        throw Error(ErrorCode::MalformedRational, "'" + std::string(text) + "'");

    if (slash == std::string_view::npos) return Rational(BigInt(std::string(num)));

    if (!den.empty() && (den.front() == '-' || den.front() == '+'))
        throw Error(ErrorCode::NegativeDenominator, "'" + std::string(text) + "'");
    if (!all_digits(den))
        throw Error(ErrorCode::MalformedRational, "'" + std::string(text) + "'");

    BigInt p{std::string(num)};
    BigInt q{std::string(den)};
    if (q == 0) throw Error(ErrorCode::ZeroDenominator, "'" + std::string(text) + "'");

    BigInt g;
    mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
    if (g != 1)
        throw Error(ErrorCode::NonReducedRational, "'" + std::string(text) + "'");
    return Rational(p, q);
}

std::string to_string(const Rational& value)
{
    return value.get_str();
}

std::string to_string(const BigInt& value)
{
    return value.get_str();
}

BigInt floor(const Rational& value)
{
    BigInt out;
    mpz_fdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
    return out;
}

BigInt ceil(const Rational& value)
{
    BigInt out;
    mpz_cdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
    return out;
}

Rational frac(const Rational& value)
{
    return value - Rational(floor(value));
}

double log(const BigInt& value)
{
    if (value <= 0) return -std::numeric_limits<double>::infinity();
    long exponent = 0;
    const double mantissa = mpz_get_d_2exp(&exponent, value.get_mpz_t());
    return std::log(mantissa) + static_cast<double>(exponent) * std::log(2.0);
}

} // namespace rotor
