// pisotlab: command-line front end for Pisot groups, beta-expansions, the symbolic group and toral coding.

#include "pisot/io.hpp"
#include "pisot/pisot.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <iostream>
#include <random>

using namespace pisot;
using io::json;

namespace {

enum exit_code { ok = 0, internal = 1, refused = 2, violated = 3 };

struct RunConfig {
    std::string command;
    std::string poly;
    int precision = default_coding_precision;
    long height = default_height;
    long ext_height = default_extension_height;
    std::size_t steps = default_step_cap;
    std::string format = "text";
    std::string value;
    std::string xi = "xi0";
    std::size_t n = 120;
    std::size_t samples = 100;
    std::uint64_t seed = 1;
};

/// Raised when a report computed fine but shows a failed check.
struct violation {
    json report;
    std::string text;
};

int exit_for(errc c)
{
    switch (c) {
    case errc::kernel_violation:
    case errc::semiconjugacy_violation:
    case errc::factorization_violation:
    case errc::determinant_mismatch: return violated;
    case errc::internal_inconsistency: return internal;
    default: return refused;
    }
}

bool json_out(const RunConfig& c) { return c.format == "json"; }

void emit(const RunConfig& c, const json& j, const std::string& text)
{
    if (json_out(c)) std::cout << io::dump(j) << '\n';
    else std::cout << text;
}

std::string rational_text(const Rational& q)
{
    std::ostringstream os;
    os << std::setprecision(3) << q.get_d();
    return os.str();
}

int cmd_analyze(const RunConfig& c, const PisotPolynomial& f)
{
    auto s = group_structure(f);
    json j = io::to_json(s);
    j["polynomial"] = f.to_string();
    j["certificate"] = io::to_json(f.certificate());
    j["group"] = io::group_name(s.invariant_factors);

    std::ostringstream os;
    os << "polynomial   " << f.to_string() << '\n';
    const auto& cert = f.certificate();
    os << "beta         ~" << f.beta().approx() << "  (certified at " << cert.bits << " bits)\n";
    for (std::size_t i = 0; i < cert.roots.size(); ++i) {
        if (i == cert.dominant) continue;
        const auto& r = cert.roots[i];
        os << "conjugate    ~" << r.center_re.get_d() << (r.center_im >= 0 ? "+" : "") << r.center_im.get_d()
           << "i  |.| <= " << r.modulus_upper.get_d() << '\n';
    }
    os << "M_beta\n" << io::matrix_text(s.M_beta);
    os << "D            " << s.D.get_str() << '\n';
    os << "xi0          " << s.xi0.to_string() << '\n';
    os << "factors      " << io::group_name(s.invariant_factors) << '\n';
    os << "d            " << s.d.get_str() << '\n';
    os << "cyclic       " << (s.cyclic ? "yes" : "no") << '\n';
    emit(c, j, os.str());
    return ok;
}

int cmd_expand(const RunConfig& c, const PisotPolynomial& f)
{
    auto x = io::parse_value(f, c.value);
    auto e = expand_positive(x, c.steps);
    bool exact = evaluate_expansion(f, e) == x;
    bool admissible = is_admissible(parry_sequence(f), e);
    json j{{"value", io::to_json(x)},
           {"expansion", io::to_json(e)},
           {"preperiod", e.frac_pre.size()},
           {"period", e.frac_period.size()},
           {"reconstruction_exact", exact},
           {"admissible", admissible}};
    std::ostringstream os;
    os << "value        " << x.to_string() << '\n';
    os << "expansion    " << e.to_string() << '\n';
    os << "integer part " << e.integer_part.size() << " digits, preperiod " << e.frac_pre.size() << ", period "
       << e.frac_period.size() << '\n';
    os << "round trip   " << (exact ? "exact" : "MISMATCH") << ", " << (admissible ? "admissible" : "NOT ADMISSIBLE") << '\n';
    if (!exact || !admissible) throw violation{j, os.str()};
    emit(c, j, os.str());
    return ok;
}

int cmd_group(const RunConfig& c, const PisotPolynomial& f)
{
    SymbolicGroup g(f, c.ext_height);
    json j = io::to_json(g);
    std::ostringstream os;
    os << g.size() << " classes (" << io::group_name(g.group().structure().invariant_factors) << ")\n";
    for (const auto& cl : g.classes()) {
        os << "  [" << cl.index << "] order " << cl.order.get_str() << "  rep " << cl.rep.to_string() << '\n';
        os << "      tails";
        for (const auto& w : cl.tails) os << ' ' << w.to_string();
        os << '\n';
    }
    emit(c, j, os.str());
    return ok;
}

int cmd_finitary(const RunConfig& c, const PisotPolynomial& f)
{
    auto r = finitary_classify(f, c.height, c.steps);
    json j = io::to_json(r);
    std::ostringstream os;
    os << "verdict      " << to_string(r.verdict) << '\n';
    os << "criterion    " << r.criterion << '\n';
    if (r.witness) os << "witness      " << r.witness->to_string() << " = " << r.witness_expansion->to_string() << '\n';
    if (r.checked) os << "searched     " << r.checked << " elements up to height " << r.height << '\n';
    emit(c, j, os.str());
    return ok;
}

int cmd_coding(const RunConfig& c, const PisotPolynomial& f)
{
    std::mt19937_64 rng(c.seed);
    const auto A = endomorphism_A(f);
    const Integer D = discriminant(f);
    json j{{"A", io::to_json(A)}, {"detA", io::to_json(A.determinant())}, {"D", io::to_json(D)}};
    j["companion"] = io::to_json(companion_matrix(f));
    j["precision"] = c.precision;
    j["tolerance"] = io::to_json(tolerance(c.precision));

    std::ostringstream os;
    os << "companion M\n" << io::matrix_text(companion_matrix(f));
    os << "A = phi phi0^-1\n" << io::matrix_text(A);
    os << "det A        " << A.determinant().get_str() << "  (D = " << D.get_str() << ")\n";

    if (!companion_eigenvector_holds(f, c.precision)) {
        os << "eigenvector  (1, 1/beta, ...) FAILED\n";
        throw violation{j, os.str()};
    }
    try {
        SymbolicGroup g(f, c.ext_height);
        auto k = verify_kernel(g, rng, c.samples, c.precision);
        j["kernel_classes"] = k.kernel_classes;
        j["kernel_max_err"] = io::to_json(k.max_error);
        os << "kernel       " << k.kernel_classes << " classes at the origin (|D| = " << Integer(abs(D)).get_str() << "), "
           << k.tails_checked << " tails, max err " << rational_text(k.max_error) << '\n';
        os << "             " << k.non_kernel_checked << " sampled words outside P_beta kept away from the origin\n";
    } catch (const error& e) {
        if (e.code() != errc::not_finitary) throw;
        j["kernel_classes"] = nullptr;
        os << "kernel       skipped: " << e.what() << '\n';
    }

    const auto p = parry_sequence(f, c.steps);
    std::vector<BetaExpansion> samples;
    for (std::size_t i = 0; i < c.samples; ++i) samples.push_back(random_admissible_expansion(p, rng, 30, 10));
    Rational semi = 0;
    for (const auto& map : {CodingMap::phi0(f), CodingMap::phi(f)})
        semi = std::max(semi, verify_semiconjugacy(map, samples, c.precision).max_error);
    auto fact = verify_factorization(f, samples, c.precision);
    j["semiconjugacy_max_err"] = io::to_json(semi);
    j["factorization_max_err"] = io::to_json(fact.max_error);
    j["samples"] = samples.size();
    os << "semiconj.    " << samples.size() << " samples, max err " << rational_text(semi) << '\n';
    os << "factoriz.    " << samples.size() << " samples, max err " << rational_text(fact.max_error) << '\n';
    emit(c, j, os.str());
    return ok;
}

int cmd_recurrent(const RunConfig& c, const PisotPolynomial& f)
{
    auto xi = io::parse_value(f, c.xi);
    auto seq = recurrent_sequence(xi, c.n);
    auto back = recognize_xi(seq.terms, f);
    bool coset = coset_equal(back, xi);
    json j{{"xi", io::to_json(xi)}, {"terms", io::to_json(seq.terms)}, {"recognized", io::to_json(back)}, {"same_coset", coset}};
    j["onset"] = seq.onset ? json(*seq.onset) : json(nullptr);
    std::ostringstream os;
    os << "xi           " << xi.to_string() << '\n';
    os << "T_1..T_" << seq.terms.size() << "     ";
    for (std::size_t i = 0; i < seq.terms.size() && i < 20; ++i) os << ' ' << seq.terms[i].get_str();
    if (seq.terms.size() > 20) os << " ...";
    os << '\n';
    os << "onset        " << (seq.onset ? std::to_string(*seq.onset) : std::string("none")) << '\n';
    os << "recognized   " << back.to_string() << (coset ? "  (same coset)" : "  (DIFFERENT coset)") << '\n';
    try {
        auto tails = partial_limit_tails(seq.terms, f);
        json jt = json::array();
        os << "limits      ";
        for (const auto& w : tails) {
            jt.push_back(io::to_json(w));
            os << ' ' << w.to_string();
        }
        os << '\n';
        j["partial_limits"] = jt;
    } catch (const error& e) {
        j["partial_limits"] = nullptr;
        os << "limits       unavailable: " << e.what() << '\n';
    }
    if (!coset) throw violation{j, os.str()};
    emit(c, j, os.str());
    return ok;
}

int run(const RunConfig& c)
{
    try {
        auto f = parse_polynomial(c.poly);
        try {
            if (c.command == "analyze") return cmd_analyze(c, f);
            if (c.command == "expand") return cmd_expand(c, f);
            if (c.command == "group") return cmd_group(c, f);
            if (c.command == "finitary") return cmd_finitary(c, f);
            if (c.command == "coding") return cmd_coding(c, f);
            if (c.command == "recurrent") return cmd_recurrent(c, f);
        } catch (const violation& v) {
            if (json_out(c)) {
                json j = v.report;
                j["status"] = "violation";
                std::cout << io::dump(j) << '\n';
            } else {
                std::cout << v.text;
            }
            std::cerr << "verification failed\n";
            return violated;
        }
        std::cerr << "unknown command " << c.command << '\n';
        return refused;
    } catch (const error& e) {
        if (json_out(c)) std::cout << io::dump(json{{"error", std::string(to_string(e.code()))}, {"message", e.what()}}) << '\n';
        std::cerr << e.what() << '\n';
        return exit_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return internal;
    }
}

} // namespace

int main(int argc, char** argv)
{
    RunConfig cfg;
    CLI::App app{"Pisot groups, beta-expansions and toral codings of Pisot units"};
    app.require_subcommand(1);

    auto common = [&](CLI::App* sub) {
        sub->add_option("--poly", cfg.poly, "Minimal polynomial, \"x^3-x^2-x-1\" or [1,-1,-1,-1]")->required();
        sub->add_option("--precision", cfg.precision, "Working precision in bits")
            ->envname("PISOTLAB_PRECISION")
            ->check(CLI::Range(16, 1 << 16))
            ->capture_default_str();
        sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
        sub->add_option("--steps", cfg.steps, "Step cap for greedy orbits")->check(CLI::PositiveNumber)->capture_default_str();
    };

    auto* analyze = app.add_subcommand("analyze", "Certificate, trace matrix, discriminant and Pisot group structure");
    common(analyze);

    auto* expand = app.add_subcommand("expand", "Greedy beta-expansion of a nonnegative element of Q(beta)");
    common(expand);
    expand->add_option("--value", cfg.value, "\"xi0\", \"1/2\", \"(1+9b-4b^2)/22\" or {\"num\":[..],\"den\":d}")->required();

    auto* group = app.add_subcommand("group", "Enumerate the symbolic group, one class per coset");
    common(group);
    group->add_option("--ext-height", cfg.ext_height, "Height of the translate box")->check(CLI::NonNegativeNumber)->capture_default_str();

    auto* finitary = app.add_subcommand("finitary", "Decide or search the finiteness property");
    common(finitary);
    finitary->add_option("--height", cfg.height, "Search height H")->check(CLI::PositiveNumber)->capture_default_str();

    auto* coding = app.add_subcommand("coding", "Matrix A, kernel, semiconjugacy and factorization checks");
    common(coding);
    coding->add_option("--ext-height", cfg.ext_height, "Height of the translate box")->check(CLI::NonNegativeNumber)->capture_default_str();
    coding->add_option("--samples", cfg.samples, "Random samples per check")->check(CLI::PositiveNumber)->capture_default_str();
    coding->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();

    auto* recurrent = app.add_subcommand("recurrent", "Sequence round(xi beta^n), its reconstruction and partial limits");
    common(recurrent);
    recurrent->add_option("--xi", cfg.xi, "Element of P_beta")->capture_default_str();
    recurrent->add_option("--n", cfg.n, "Number of terms")->check(CLI::Range(1, 100000))->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return refused;
    }
    for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
    return run(cfg);
}
