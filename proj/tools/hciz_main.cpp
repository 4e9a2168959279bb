#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "hciz/coefficient_cache.hpp"
#include "hciz/dispersionless.hpp"
#include "hciz/errors.hpp"
#include "hciz/exact_eval.hpp"
#include "hciz/free_cumulants.hpp"
#include "hciz/haar_mc.hpp"
#include "hciz/toda.hpp"
#include "json.hpp"

namespace {

using hciz::Rational;
using hciz::rational_str;
using ordered_json = nlohmann::ordered_json;

std::vector<double> parse_doubles(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw hciz::domain_error("empty entry in list '" + csv + "'");
        size_t used = 0;
        out.push_back(std::stod(item, &used));
        if (used != item.size()) throw hciz::domain_error("bad number '" + item + "'");
    }
    if (out.empty()) throw hciz::domain_error("empty list");
    return out;
}

std::vector<Rational> parse_rationals(const std::string& csv) {
    std::vector<Rational> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(hciz::rational_from_string(item));
    if (out.empty()) throw hciz::domain_error("empty list");
    return out;
}

std::vector<int> parse_ints(const std::string& csv) {
    std::vector<int> out;
    for (double x : parse_doubles(csv)) out.push_back(static_cast<int>(x));
    return out;
}

// "t1=1/3,tb2=-2,..." -> TodaTimes
hciz::TodaTimes parse_times(const std::string& spec) {
    hciz::TodaTimes times;
    if (spec.empty()) return times;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw hciz::domain_error("bad time entry '" + item + "'");
        std::string key = item.substr(0, eq);
        Rational val = hciz::rational_from_string(item.substr(eq + 1));
        bool bar = key.rfind("tb", 0) == 0;
        std::string idx = key.substr(bar ? 2 : 1);
        if (!bar && key.rfind("t", 0) != 0)
            throw hciz::domain_error("time keys look like t1, tb1: got '" + key + "'");
        int q = std::stoi(idx);
        if (q < 1) throw hciz::domain_error("time index must be >= 1");
        (bar ? times.tbar : times.t)[q] = val;
    }
    return times;
}

enum class Format { pretty, json, csv };

void emit_eval(Format fmt, const char* name, const hciz::EvalResult& r) {
    switch (fmt) {
        case Format::json: {
            ordered_json j;
            j["command"] = name;
            j["value"] = r.value;
            j["rel_error"] = r.rel_error;
            j["bits_used"] = r.bits_used;
            j["confluent"] = r.confluent;
            std::cout << j.dump() << "\n";
            break;
        }
        case Format::csv:
            std::cout << "value,rel_error,bits_used,confluent\n"
                      << std::setprecision(17) << r.value << "," << r.rel_error << ","
                      << r.bits_used << "," << (r.confluent ? 1 : 0) << "\n";
            break;
        case Format::pretty:
            std::cout << name << " = " << std::setprecision(17) << r.value
                      << "   (rel err ~ " << std::setprecision(3) << r.rel_error << ", "
                      << r.bits_used << " bits" << (r.confluent ? ", confluent" : "") << ")\n";
            break;
    }
}

void emit_polynomials(Format fmt, const std::vector<hciz::CacheRecord>& recs) {
    switch (fmt) {
        case Format::json: {
            ordered_json arr = ordered_json::array();
            for (const auto& r : recs) {
                ordered_json j;
                j["order"] = r.order;
                j["method"] = r.method;
                ordered_json coeffs = ordered_json::object();
                for (const auto& [m, c] : r.poly.terms()) coeffs[m.str()] = rational_str(c);
                j["coeffs"] = std::move(coeffs);
                arr.push_back(std::move(j));
            }
            std::cout << arr.dump() << "\n";
            break;
        }
        case Format::csv:
            std::cout << "order,monomial,coefficient\n";
            for (const auto& r : recs)
                for (const auto& [m, c] : r.poly.terms())
                    std::cout << r.order << "," << m.str() << "," << rational_str(c) << "\n";
            break;
        case Format::pretty:
            for (const auto& r : recs) {
                std::cout << "F_" << r.order << " [" << r.method << "]:\n";
                for (const auto& [m, c] : r.poly.terms())
                    std::cout << "  " << m.str() << "  " << rational_str(c) << "\n";
            }
            break;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hciz: exact unitary-group integrals of HCIZ type and their large-N expansion"};
    app.require_subcommand(1);
    std::string format_name = "pretty";
    app.add_option("--format", format_name, "output format")
        ->check(CLI::IsMember({"pretty", "json", "csv"}))
        ->capture_default_str();

    std::function<void(Format)> action;

    // ---- eval
    {
        auto* cmd = app.add_subcommand("eval", "exact unitary integral at finite N");
        auto a = std::make_shared<std::string>();
        auto b = std::make_shared<std::string>();
        auto s = std::make_shared<double>(1.0);
        auto bits = std::make_shared<int>(128);
        auto target = std::make_shared<double>(1e-12);
        cmd->add_option("--a", *a, "eigenvalues of A, comma separated")->required();
        cmd->add_option("--b", *b, "eigenvalues of B, comma separated")->required();
        cmd->add_option("--s", *s, "coupling s > 0")->required();
        cmd->add_option("--prec-bits", *bits, "working precision in bits");
        cmd->add_option("--target-rel-error", *target, "target relative error");
        cmd->callback([=, &action]() {
            action = [=](Format fmt) {
                hciz::SpectralData d{parse_doubles(*a), parse_doubles(*b), *s};
                hciz::PrecisionPolicy pol;
                pol.bits = *bits;
                pol.target_rel_error = *target;
                emit_eval(fmt, "eval", hciz::eval_unitary_integral(d, pol));
            };
        });
    }

    // ---- eval-rect
    {
        auto* cmd = app.add_subcommand("eval-rect", "rectangular two-group integral");
        auto n1 = std::make_shared<int>(), n2 = std::make_shared<int>();
        auto a = std::make_shared<std::string>(), b = std::make_shared<std::string>();
        auto s = std::make_shared<double>(1.0);
        auto bits = std::make_shared<int>(128);
        cmd->add_option("--n1", *n1)->required();
        cmd->add_option("--n2", *n2)->required();
        cmd->add_option("--a", *a, "N2 squared singular values of A")->required();
        cmd->add_option("--b", *b, "N2 squared singular values of B")->required();
        cmd->add_option("--s", *s)->required();
        cmd->add_option("--prec-bits", *bits);
        cmd->callback([=, &action]() {
            action = [=](Format fmt) {
                hciz::RectangularData d{*n1, *n2, parse_doubles(*a), parse_doubles(*b), *s};
                hciz::PrecisionPolicy pol;
                pol.bits = *bits;
                emit_eval(fmt, "eval-rect", hciz::eval_rectangular(d, pol));
            };
        });
    }

    // ---- eval-chain
    {
        auto* cmd = app.add_subcommand("eval-chain", "K-chain unitary integral");
        auto sizes = std::make_shared<std::string>();
        auto a = std::make_shared<std::string>(), b = std::make_shared<std::string>();
        auto s = std::make_shared<double>(1.0);
        auto bits = std::make_shared<int>(128);
        cmd->add_option("--sizes", *sizes, "group sizes N_1..N_K")->required();
        cmd->add_option("--a", *a, "min(sizes) product eigenvalues")->required();
        cmd->add_option("--b", *b)->required();
        cmd->add_option("--s", *s)->required();
        cmd->add_option("--prec-bits", *bits);
        cmd->callback([=, &action]() {
            action = [=](Format fmt) {
                hciz::ChainData d{parse_ints(*sizes), parse_doubles(*a), parse_doubles(*b), *s};
                hciz::PrecisionPolicy pol;
                pol.bits = *bits;
                emit_eval(fmt, "eval-chain", hciz::eval_chain(d, pol));
            };
        });
    }

    // ---- free-energy
    {
        auto* cmd = app.add_subcommand("free-energy", "large-N free energy coefficients F_n");
        auto order = std::make_shared<int>(3);
        auto method = std::make_shared<std::string>("enum");
        auto cache = std::make_shared<std::string>();
        auto threads = std::make_shared<int>(1);
        cmd->add_option("--order", *order)->required();
        cmd->add_option("--method", *method)->check(CLI::IsMember({"enum", "oracle"}));
        cmd->add_option("--cache", *cache, "line-JSON coefficient cache file");
        cmd->add_option("--threads", *threads);
        cmd->callback([=, &action]() {
            action = [=](Format fmt) {
                hciz::EnumOptions opts;
                opts.threads = *threads;
                emit_polynomials(fmt, hciz::compute_and_cache(*order, *method, *cache, opts));
            };
        });
    }

    // ---- toda-check
    {
        auto* cmd = app.add_subcommand("toda-check", "Toda lattice equation residual");
        auto n = std::make_shared<int>(1);
        auto order = std::make_shared<int>(6);
        auto times = std::make_shared<std::string>();
        cmd->add_option("--n", *n)->required();
        cmd->add_option("--order", *order);
        cmd->add_option("--times", *times, "e.g. t1=1/3,tb1=1/5");
        cmd->callback([=, &action]() {
            action = [=](Format fmt) {
                hciz::HbarSeries res = hciz::toda_check(*n, parse_times(*times), *order);
                bool zero = res.is_zero_series();
                if (fmt == Format::json) {
                    ordered_json j;
                    j["command"] = "toda-check";
                    j["n"] = *n;
                    j["order"] = *order;
                    j["residual_zero"] = zero;
                    std::cout << j.dump() << "\n";
                } else {
                    std::cout << "toda residual through 1/hbar^" << *order << ": "
                              << (zero ? "0" : "NONZERO") << "\n";
                }
                if (!zero) {
                    for (int k = 0; k <= res.order(); ++k)
                        if (!(res[k] == 0))
                            std::cerr << "  hbar^-" << k << ": " << rational_str(res[k]) << "\n";
                    throw hciz::crosscheck_error("Toda residual is nonzero");
                }
            };
        });
    }

    // ---- dispersionless
    {
        auto* cmd = app.add_subcommand("dispersionless", "closed-form large-N series");
        auto kase = std::make_shared<std::string>("one-sided");
        auto n = std::make_shared<int>(2);
        auto order = std::make_shared<int>(8);
        cmd->add_option("--case", *kase)->check(CLI::IsMember({"one-sided", "diagonal"}));
        cmd->add_option("--n", *n)->required();
        cmd->add_option("--order", *order);
        cmd->callback([=, &action]() {
            action = [=](Format fmt) {
                if (*kase == "one-sided") {
                    hciz::QPoly F = hciz::free_energy_one_sided(*n, *order);
                    hciz::QPoly psi = hciz::psi_one_sided_series(*n, *order);
                    if (fmt == Format::json) {
                        ordered_json j;
                        j["case"] = "one-sided";
                        ordered_json fc = ordered_json::object(), pc = ordered_json::object();
                        for (const auto& [m, c] : F.terms()) fc[m.str()] = rational_str(c);
                        for (const auto& [m, c] : psi.terms()) pc[m.str()] = rational_str(c);
                        j["F"] = std::move(fc);
                        j["psi"] = std::move(pc);
                        std::cout << j.dump() << "\n";
                    } else if (fmt == Format::csv) {
                        std::cout << "series,monomial,coefficient\n";
                        for (const auto& [m, c] : F.terms())
                            std::cout << "F," << m.str() << "," << rational_str(c) << "\n";
                        for (const auto& [m, c] : psi.terms())
                            std::cout << "psi," << m.str() << "," << rational_str(c) << "\n";
                    } else {
                        std::cout << "one-sided F (weight <= " << *order << "):\n";
                        for (const auto& [m, c] : F.terms())
                            std::cout << "  " << m.str() << "  " << rational_str(c) << "\n";
                        std::cout << "psi:\n";
                        for (const auto& [m, c] : psi.terms())
                            std::cout << "  " << m.str() << "  " << rational_str(c) << "\n";
                    }
                } else {
                    hciz::DiagonalSeries d = hciz::diagonal_series(*n, *order);
                    if (fmt == Format::json) {
                        ordered_json j;
                        j["case"] = "diagonal";
                        j["n"] = *n;
                        ordered_json ps = ordered_json::array(), fs = ordered_json::array();
                        for (const auto& c : d.psi) ps.push_back(rational_str(c));
                        for (const auto& c : d.F) fs.push_back(rational_str(c));
                        j["psi"] = std::move(ps);
                        j["F"] = std::move(fs);
                        std::cout << j.dump() << "\n";
                    } else {
                        std::cout << "x = t" << *n << "*tb" << *n << "\n";
                        for (size_t k = 0; k < d.psi.size(); ++k)
                            std::cout << "  x^" << k << "  psi: " << rational_str(d.psi[k])
                                      << "  F: " << rational_str(d.F[k]) << "\n";
                    }
                }
            };
        });
    }

    // ---- mc
    {
        auto* cmd = app.add_subcommand("mc", "Haar Monte Carlo estimate");
        auto n = std::make_shared<int>(0);
        auto n1 = std::make_shared<int>(0), n2 = std::make_shared<int>(0);
        auto a = std::make_shared<std::string>(), b = std::make_shared<std::string>();
        auto s = std::make_shared<double>(1.0);
        auto samples = std::make_shared<std::int64_t>(100000);
        auto seed = std::make_shared<std::uint64_t>(42);
        auto threads = std::make_shared<int>(1);
        cmd->add_option("--n", *n, "matrix size (unitary case)");
        cmd->add_option("--n1", *n1, "rectangular N1 (enables the two-group integrand)");
        cmd->add_option("--n2", *n2, "rectangular N2");
        cmd->add_option("--a", *a)->required();
        cmd->add_option("--b", *b)->required();
        cmd->add_option("--s", *s)->required();
        cmd->add_option("--samples", *samples);
        cmd->add_option("--seed", *seed);
        cmd->add_option("--threads", *threads);
        cmd->callback([=, &action]() {
            action = [=](Format fmt) {
                hciz::McEstimate e;
                if (*n1 > 0) {
                    hciz::RectangularData d{*n1, *n2, parse_doubles(*a), parse_doubles(*b), *s};
                    e = hciz::mc_estimate_rect(d, *samples, *seed, *threads);
                } else {
                    hciz::SpectralData d{parse_doubles(*a), parse_doubles(*b), *s};
                    if (*n > 0 && static_cast<size_t>(*n) != d.a.size())
                        throw hciz::domain_error("--n disagrees with the eigenvalue count");
                    e = hciz::mc_estimate(d, *samples, *seed, *threads);
                }
                if (fmt == Format::json) {
                    ordered_json j;
                    j["command"] = "mc";
                    j["mean"] = e.mean;
                    j["std_error"] = e.std_error;
                    j["samples"] = e.samples;
                    j["seed"] = e.seed;
                    std::cout << j.dump() << "\n";
                } else if (fmt == Format::csv) {
                    std::cout << "mean,std_error,samples,seed\n"
                              << std::setprecision(17) << e.mean << "," << e.std_error << ","
                              << e.samples << "," << e.seed << "\n";
                } else {
                    std::cout << "mean = " << std::setprecision(12) << e.mean << " +- "
                              << e.std_error << "  (" << e.samples << " samples, seed "
                              << e.seed << ")\n";
                }
            };
        });
    }

    // ---- cumulants
    {
        auto* cmd = app.add_subcommand("cumulants", "free cumulants from moments");
        auto moments = std::make_shared<std::string>();
        auto q = std::make_shared<int>(4);
        cmd->add_option("--moments", *moments, "thetabar_1,thetabar_2,... as rationals")
            ->required();
        cmd->add_option("--q", *q, "number of cumulants");
        cmd->callback([=, &action]() {
            action = [=](Format fmt) {
                std::vector<Rational> tb = parse_rationals(*moments);
                tb.resize(std::max<size_t>(tb.size(), static_cast<size_t>(*q)), Rational(0));
                auto phi = hciz::moments_to_free_cumulants(tb, *q);
                if (fmt == Format::json) {
                    ordered_json arr = ordered_json::array();
                    for (const auto& p : phi) arr.push_back(rational_str(p));
                    ordered_json j;
                    j["command"] = "cumulants";
                    j["phi"] = std::move(arr);
                    std::cout << j.dump() << "\n";
                } else if (fmt == Format::csv) {
                    std::cout << "q,phi\n";
                    for (size_t i = 0; i < phi.size(); ++i)
                        std::cout << i + 1 << "," << rational_str(phi[i]) << "\n";
                } else {
                    for (size_t i = 0; i < phi.size(); ++i)
                        std::cout << "phi_" << i + 1 << " = " << rational_str(phi[i]) << "\n";
                }
            };
        });
    }

    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    try {
        app.parse(argc, argv);
        Format fmt = format_name == "json"  ? Format::json
                     : format_name == "csv" ? Format::csv
                                            : Format::pretty;
        action(fmt);
        return 0;
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const hciz::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const hciz::precision_error& e) {
        std::cerr << "precision error: " << e.what() << "\n";
        return 3;
    } catch (const hciz::cache_error& e) {
        std::cerr << "cache error: " << e.what() << "\n";
        return 4;
    } catch (const hciz::crosscheck_error& e) {
        std::cerr << "cross-check mismatch: " << e.what() << "\n";
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
