#include "levcorr/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string_view>

#include "levcorr/errors.hpp"
#include "numfmt.hpp"

namespace levcorr {
namespace {

double parse_double(std::string_view s, std::size_t line_no) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw MalformedLine(line_no, "bad number");
    return v;
}

template <class Int>
Int parse_int(std::string_view s, std::size_t line_no) {
    Int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw MalformedLine(line_no, "bad integer");
    return v;
}

}  // namespace

void write_profile_csv(std::ostream& out, std::span<const CorrelationProfile> profiles,
                       std::optional<double> filter_sigma) {
    for (const auto& p : profiles)
        if (!p.sigmas) throw MissingSigmas();
    out << profile_csv_header << '\n';
    std::string row;
    for (const auto& p : profiles) {
        const auto& sigmas = *p.sigmas;
        for (std::size_t k = 0; k < p.size(); ++k) {
            if (filter_sigma && std::abs(p.values[k]) <= *filter_sigma * sigmas[k]) continue;
            row = detail::round_trip_sci(p.d);
            row += ',';
            row += std::to_string(p.lags[k]);
            row += ',';
            row += detail::round_trip_sci(p.values[k]);
            row += ',';
            row += detail::round_trip_sci(sigmas[k]);
            row += ',';
            row += std::to_string(p.pair_counts[k]);
            row += '\n';
            out << row;
        }
    }
}

void write_profile_csv(std::ostream& out, const CorrelationProfile& profile,
                       std::optional<double> filter_sigma) {
    write_profile_csv(out, std::span<const CorrelationProfile>(&profile, 1), filter_sigma);
}

std::vector<CorrelationProfile> read_profile_csv(std::istream& in) {
    std::vector<CorrelationProfile> out;
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) throw EmptyInput();
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != profile_csv_header) throw MalformedLine(line_no, "expected header " + std::string(profile_csv_header));

    while (std::getline(in, line)) {
        ++line_no;
        std::string_view v(line);
        if (!v.empty() && v.back() == '\r') v.remove_suffix(1);
        if (v.empty()) continue;
        std::string_view fields[5];
        std::size_t count = 0;
        while (count < 5) {
            const auto comma = v.find(',');
            fields[count++] = v.substr(0, comma);
            if (comma == std::string_view::npos) {
                v = {};
                break;
            }
            v.remove_prefix(comma + 1);
        }
        if (count != 5 || !v.empty()) throw MalformedLine(line_no, "expected 5 fields");

        const double d = parse_double(fields[0], line_no);
        if (out.empty() || out.back().d != d) {
            out.emplace_back();
            out.back().d = d;
            out.back().sigmas.emplace();
        }
        auto& p = out.back();
        p.lags.push_back(parse_int<int>(fields[1], line_no));
        p.values.push_back(parse_double(fields[2], line_no));
        p.sigmas->push_back(parse_double(fields[3], line_no));
        p.pair_counts.push_back(parse_int<std::size_t>(fields[4], line_no));
    }
    return out;
}

GammaKappaRow gamma_kappa_row(double d, const FitResult& fit) {
    if (fit.model != Model::power_law) throw WrongModel("gamma/kappa table needs power-law fits");
    return {d, fit.params[1], fit.param_errors[1], fit.params[0], fit.param_errors[0], fit.reduced_chi2};
}

void write_gamma_kappa_csv(std::ostream& out, std::span<const GammaKappaRow> rows) {
    out << gamma_kappa_csv_header << '\n';
    for (const auto& r : rows) {
        out << detail::round_trip_sci(r.d) << ',' << detail::round_trip_sci(r.gamma) << ','
            << detail::round_trip_sci(r.gamma_err) << ',' << detail::round_trip_sci(r.kappa) << ','
            << detail::round_trip_sci(r.kappa_err) << ',' << detail::round_trip_sci(r.chi2red) << '\n';
    }
}

std::optional<double> argmax_kappa(std::span<const GammaKappaRow> rows) {
    if (rows.empty()) return std::nullopt;
    const auto it = std::max_element(rows.begin(), rows.end(),
                                     [](const GammaKappaRow& a, const GammaKappaRow& b) { return a.kappa < b.kappa; });
    return it->d;
}

std::string format_with_error(double value, double error) {
    if (!std::isfinite(value) || !std::isfinite(error) || !(error > 0.0)) return detail::sci(value);
    int decimals = 1 - static_cast<int>(std::floor(std::log10(error)));
    long long digits = std::llround(error * std::pow(10.0, decimals));
    if (digits >= 100) {
        --decimals;
        digits = std::llround(error * std::pow(10.0, decimals));
    }
    char buf[64];
    if (decimals >= 0) {
        std::snprintf(buf, sizeof buf, "%.*f(%lld)", decimals, value, digits);
    } else {
        // error >= 100: print both at integer precision.
        std::snprintf(buf, sizeof buf, "%.0f(%.0f)", value, error);
    }
    return buf;
}

nlohmann::json fit_to_json(const FitResult& fit, std::optional<double> d) {
    nlohmann::json j;
    if (d) j["d"] = *d;
    j["model"] = std::string(model_name(fit.model));
    switch (fit.model) {
        case Model::power_law: j["param_names"] = {"kappa", "gamma"}; break;
        case Model::exponential: j["param_names"] = {"alpha", "tau"}; break;
        case Model::quadratic: j["param_names"] = {"alpha", "beta", "rho"}; break;
    }
    j["params"] = fit.params;
    j["param_errors"] = fit.param_errors;
    j["covariance"] = fit.covariance;
    j["chi2"] = fit.chi2;
    j["reduced_chi2"] = fit.reduced_chi2;
    j["fit_range"] = {fit.fit_range.lo, fit.fit_range.hi};
    j["n_points"] = fit.n_points;
    j["excluded_points"] = fit.excluded_x;
    j["filtered_points"] = fit.filtered_x;
    j["iterations"] = fit.iterations;
    return j;
}

std::string fnv1a_hex(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace levcorr
