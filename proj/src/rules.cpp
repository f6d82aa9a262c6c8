#include "shiftlab/rules.hpp"

#include <cstdio>
#include <sstream>

namespace shiftlab
{

namespace
{

constexpr double kFormTol = 1e-12;

double parse_real(std::string_view s, std::string_view whole)
{
    std::string buf(s);
    if (buf.size() >= 2 && buf.front() == '(' && buf.back() == ')')
        buf = buf.substr(1, buf.size() - 2);
    char *end = nullptr;
    double v = std::strtod(buf.c_str(), &end);
    if (buf.empty() || end != buf.c_str() + buf.size() || !std::isfinite(v))
        throw InvalidSequence("bad number '" + std::string(s) + "' in rule '" + std::string(whole) + "'");
    return v;
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

std::string format_complex(Complex z)
{
    char buf[96];
    if (z.imag() == 0.0)
        std::snprintf(buf, sizeof buf, "%.17g", z.real());
    else
        std::snprintf(buf, sizeof buf, "(%.17g%+.17gi)", z.real(), z.imag());
    return buf;
}

} // namespace

bool GrowthForm::square_summable() const noexcept
{
    if (zero)
        return true;
    if (log_ratio < -kFormTol)
        return true;
    if (log_ratio > kFormTol)
        return false;
    return 2.0 * degree < -1.0;
}

bool GrowthForm::bounded() const noexcept
{
    if (zero)
        return true;
    if (log_ratio < -kFormTol)
        return true;
    if (log_ratio > kFormTol)
        return false;
    return degree <= 0.0;
}

GrowthForm operator*(const GrowthForm &a, const GrowthForm &b) noexcept
{
    if (a.zero || b.zero)
        return GrowthForm{true, 0.0, 0.0};
    return GrowthForm{false, a.degree + b.degree, a.log_ratio + b.log_ratio};
}

SequenceRule SequenceRule::constant(Complex c)
{
    SequenceRule r;
    r.coeff_ = c;
    return r;
}

SequenceRule SequenceRule::linear() { return power(1.0); }

SequenceRule SequenceRule::power(double degree)
{
    SequenceRule r;
    r.degree_ = degree;
    return r;
}

SequenceRule SequenceRule::geometric(Complex ratio)
{
    SequenceRule r;
    r.ratio_ = ratio;
    return r;
}

SequenceRule SequenceRule::reciprocal() { return power(-1.0); }

SequenceRule SequenceRule::custom(ComplexVector values)
{
    for (const auto &v : values)
        if (!is_finite(v))
            throw InvalidSequence("custom rule contains a non-finite value");
    SequenceRule r;
    r.custom_ = std::move(values);
    return r;
}

SequenceRule SequenceRule::parse(std::string_view text)
{
    std::string_view whole = trim(text);
    if (whole.empty())
        throw InvalidSequence("empty rule");

    if (whole.substr(0, 7) == "custom:")
    {
        ComplexVector values;
        std::string_view rest = whole.substr(7);
        while (!rest.empty())
        {
            auto comma = rest.find(',');
            auto item = trim(rest.substr(0, comma));
            values.emplace_back(parse_real(item, whole), 0.0);
            if (comma == std::string_view::npos)
                break;
            rest.remove_prefix(comma + 1);
        }
        if (values.empty())
            throw InvalidSequence("custom rule needs at least one value");
        return custom(std::move(values));
    }

    SequenceRule result;
    std::string_view rest = whole;
    while (true)
    {
        auto star = rest.find('*');
        auto factor = trim(rest.substr(0, star));
        if (factor.empty())
            throw InvalidSequence("empty factor in rule '" + std::string(whole) + "'");

        SequenceRule f;
        if (factor == "k")
            f = linear();
        else if (factor.substr(0, 2) == "k^")
            f = power(parse_real(factor.substr(2), whole));
        else if (factor == "1/k")
            f = reciprocal();
        else if (factor.substr(0, 4) == "1/k^")
            f = power(-parse_real(factor.substr(4), whole));
        else if (factor.size() > 2 && factor.substr(factor.size() - 2) == "^k")
            f = geometric(parse_real(factor.substr(0, factor.size() - 2), whole));
        else
            f = constant(parse_real(factor, whole));

        result = result * f;
        if (star == std::string_view::npos)
            break;
        rest.remove_prefix(star + 1);
    }
    return result;
}

bool SequenceRule::defined_at(Index k) const noexcept
{
    if (k < 1)
        return false;
    if (custom_)
        return k <= static_cast<Index>(custom_->size());
    return true;
}

Complex SequenceRule::operator()(Index k) const
{
    if (!defined_at(k))
        throw IndexOutOfSupport("rule " + to_string() + " is undefined at k=" + std::to_string(k));
    if (custom_)
        return (*custom_)[static_cast<std::size_t>(k - 1)];
    Complex v = coeff_;
    if (degree_ != 0.0)
        v *= std::pow(static_cast<double>(k), degree_);
    if (ratio_ != Complex(1.0, 0.0))
        v *= std::pow(ratio_, static_cast<double>(k));
    return v;
}

GrowthForm SequenceRule::form() const noexcept
{
    if (custom_ || coeff_ == Complex(0.0, 0.0) || ratio_ == Complex(0.0, 0.0))
        return GrowthForm{true, 0.0, 0.0};
    return GrowthForm{false, degree_, std::log(std::abs(ratio_))};
}

bool SequenceRule::nonvanishing() const noexcept
{
    if (custom_)
    {
        for (const auto &v : *custom_)
            if (v == Complex(0.0, 0.0))
                return false;
        return true;
    }
    return coeff_ != Complex(0.0, 0.0) && ratio_ != Complex(0.0, 0.0);
}

std::string SequenceRule::to_string() const
{
    std::ostringstream os;
    if (custom_)
    {
        os << "custom:";
        for (std::size_t i = 0; i < custom_->size(); ++i)
            os << (i ? "," : "") << format_complex((*custom_)[i]);
        return os.str();
    }
    std::vector<std::string> factors;
    if (coeff_ != Complex(1.0, 0.0))
        factors.push_back(format_complex(coeff_));
    if (degree_ == 1.0)
        factors.emplace_back("k");
    else if (degree_ == -1.0)
        factors.emplace_back("1/k");
    else if (degree_ != 0.0)
        factors.push_back("k^" + format_complex(degree_));
    if (ratio_ != Complex(1.0, 0.0))
        factors.push_back(format_complex(ratio_) + "^k");
    if (factors.empty())
        return "1";
    for (std::size_t i = 0; i < factors.size(); ++i)
        os << (i ? "*" : "") << factors[i];
    return os.str();
}

SequenceRule operator*(const SequenceRule &a, const SequenceRule &b)
{
    if (a.custom_ || b.custom_)
    {
        if (a.custom_ && b.custom_)
            throw InvalidSequence("product of two custom rules is not in the catalog");
        const SequenceRule &list = a.custom_ ? a : b;
        const SequenceRule &other = a.custom_ ? b : a;
        ComplexVector values;
        for (Index k = 1; k <= static_cast<Index>(list.custom_->size()); ++k)
            values.push_back(list(k) * other(k));
        return SequenceRule::custom(std::move(values));
    }
    SequenceRule r;
    r.coeff_ = a.coeff_ * b.coeff_;
    r.degree_ = a.degree_ + b.degree_;
    r.ratio_ = a.ratio_ * b.ratio_;
    return r;
}

} // namespace shiftlab
