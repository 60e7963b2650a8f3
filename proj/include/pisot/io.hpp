#pragma once

// JSON and text rendering shared by the command-line tool and the tests.
// Exact quantities are written as decimal strings; keys come out sorted, so dump(parse(dump(x))) == dump(x).

#include "pisot/pisot.hpp"

#include <json.hpp>

#include <sstream>
#include <string>

namespace pisot::io {

using json = nlohmann::json;

inline json to_json(const Integer& a) { return a.get_str(); }
inline json to_json(const Rational& q) { return q.get_str(); }

inline json to_json(const std::vector<Integer>& v)
{
    json out = json::array();
    for (const auto& x : v) out.push_back(to_json(x));
    return out;
}

inline json to_json(const IntegerMatrix& M)
{
    json out = json::array();
    for (std::size_t i = 0; i < M.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < M.cols(); ++j) row.push_back(to_json(M(i, j)));
        out.push_back(std::move(row));
    }
    return out;
}

inline json to_json(const Word& w)
{
    json out = json::array();
    for (Digit d : w) out.push_back(d);
    return out;
}

/// {"num":[...],"den":d} over the common denominator.
inline json to_json(const AlgebraicNumber& a)
{
    return json{{"num", to_json(a.numerators())}, {"den", to_json(a.denominator())}};
}

inline json to_json(const BetaExpansion& e)
{
    return json{{"integer_part", to_json(e.integer_part)},
                {"frac_pre", to_json(e.frac_pre)},
                {"frac_period", to_json(e.frac_period)},
                {"text", e.to_string()}};
}

inline json to_json(const PeriodicWord& w) { return json{{"word", to_json(w.canonical)}, {"offset", w.offset}}; }

inline json to_json(const PisotCertificate& c)
{
    json roots = json::array();
    for (const auto& r : c.roots)
        roots.push_back(json{{"center_re", to_json(r.center_re)},
                             {"center_im", to_json(r.center_im)},
                             {"radius", to_json(r.radius)},
                             {"real", r.is_real},
                             {"modulus_lower", to_json(r.modulus_lower)},
                             {"modulus_upper", to_json(r.modulus_upper)}});
    return json{{"roots", std::move(roots)},
                {"dominant", c.dominant},
                {"bits", c.bits},
                {"conjugate_modulus_bound", to_json(c.conjugate_modulus_bound())}};
}

inline json to_json(const PisotGroupStructure& s)
{
    return json{{"D", to_json(s.D)},
                {"invariant_factors", to_json(s.nontrivial_factors())},
                {"d", to_json(s.d)},
                {"cyclic", s.cyclic},
                {"xi0", to_json(s.xi0)},
                {"M_beta", to_json(s.M_beta)}};
}

inline json to_json(const SymbolicGroup& g)
{
    json out = json::array();
    for (const auto& c : g.classes()) {
        json tails = json::array();
        for (const auto& w : c.tails) tails.push_back(to_json(w));
        out.push_back(json{{"rep", to_json(c.rep)},
                           {"coordinates", to_json(c.coordinates)},
                           {"tails", std::move(tails)},
                           {"canonical_tail", to_json(c.canonical_tail)},
                           {"order", to_json(c.order)}});
    }
    return out;
}

inline json to_json(const FinitaryReport& r)
{
    json out{{"verdict", to_string(r.verdict)}, {"criterion", r.criterion}, {"height", r.height}, {"checked", r.checked}};
    out["witness"] = r.witness ? to_json(*r.witness) : json(nullptr);
    out["witness_expansion"] = r.witness_expansion ? to_json(*r.witness_expansion) : json(nullptr);
    return out;
}

/// Canonical serialization: two-space indent, sorted keys.
inline std::string dump(const json& j) { return j.dump(2); }

/// "Z/22 x Z/2", or "trivial".
inline std::string group_name(const std::vector<Integer>& factors)
{
    std::string out;
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
        if (*it == 1) continue;
        if (!out.empty()) out += " x ";
        out += "Z/" + it->get_str();
    }
    return out.empty() ? "trivial" : out;
}

inline std::string matrix_text(const IntegerMatrix& M, const std::string& indent = "  ")
{
    std::ostringstream os;
    for (std::size_t i = 0; i < M.rows(); ++i) {
        os << indent << '[';
        for (std::size_t j = 0; j < M.cols(); ++j) os << (j ? ", " : "") << M(i, j).get_str();
        os << "]\n";
    }
    return os.str();
}

/// Parses an element of Q(beta): "xi0", a rational "p/q", a polynomial in any letter standing for beta
/// with an optional common denominator ("(1+9b-4b^2)/22"), or {"num":[...],"den":d}.
inline AlgebraicNumber parse_value(const PisotPolynomial& f, std::string_view text)
{
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) fail(errc::parse_error, "empty value");
    if (s == "xi0") return xi0(f);
    if (s.front() == '{') {
        json j;
        try {
            j = json::parse(s);
        } catch (const json::exception& e) {
            fail(errc::parse_error, std::string("malformed value JSON: ") + e.what());
        }
        if (!j.is_object() || !j.contains("num") || !j["num"].is_array()) fail(errc::parse_error, "value JSON needs a \"num\" array");
        auto integer = [](const json& x) {
            if (x.is_number_integer()) return Integer(x.get<long>());
            if (x.is_string()) {
                Integer v;
                if (v.set_str(x.get<std::string>(), 10) != 0) fail(errc::parse_error, "bad integer " + x.dump());
                return v;
            }
            fail(errc::parse_error, "bad integer " + x.dump());
        };
        std::vector<Integer> num;
        for (const auto& x : j["num"]) num.push_back(integer(x));
        Integer den = j.contains("den") ? integer(j["den"]) : Integer(1);
        if (den == 0) fail(errc::division_by_zero, "zero denominator");
        AlgebraicNumber acc = AlgebraicNumber::from_integer(f, 0);
        for (std::size_t i = 0; i < num.size(); ++i) acc = acc + AlgebraicNumber::beta_power(f, static_cast<long>(i)) * Rational(num[i]);
        Rational inv(Integer(1), den);
        inv.canonicalize();
        return acc * inv;
    }
    Integer den = 1;
    std::string body = s;
    if (auto slash = s.rfind('/'); slash != std::string::npos) {
        std::string d = s.substr(slash + 1);
        if (d.empty() || d.find_first_not_of("0123456789") != std::string::npos) fail(errc::parse_error, "bad denominator in " + s);
        den = Integer(d);
        if (den == 0) fail(errc::division_by_zero, "zero denominator");
        body = s.substr(0, slash);
    }
    if (body.size() >= 2 && body.front() == '(' && body.back() == ')') body = body.substr(1, body.size() - 2);
    if (body.find_first_not_of("+-0") == std::string::npos) return AlgebraicNumber::from_integer(f, 0);
    IntPoly p = poly::parse(body);
    AlgebraicNumber acc = AlgebraicNumber::from_integer(f, 0);
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] != 0) acc = acc + AlgebraicNumber::beta_power(f, static_cast<long>(i)) * Rational(p[i]);
    Rational inv(Integer(1), den);
    inv.canonicalize();
    return acc * inv;
}

} // namespace pisot::io
