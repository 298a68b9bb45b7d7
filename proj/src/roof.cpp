#include "ietmix/roof.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "ietmix/util.hpp"

namespace ietmix {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi_v<double>;

double wrap01(double t) {
    double w = t - std::floor(t);
    if (w >= 1.0) w = 0.0;
    return w;
}

}  // namespace

double TrigPoly::eval(double x) const {
    double s = constant;
    for (size_t j = 0; j < cos_coef.size(); ++j) s += cos_coef[j] * std::cos(kTwoPi * (j + 1) * x);
    for (size_t j = 0; j < sin_coef.size(); ++j) s += sin_coef[j] * std::sin(kTwoPi * (j + 1) * x);
    return s;
}

double TrigPoly::deriv1(double x) const {
    double s = 0;
    for (size_t j = 0; j < cos_coef.size(); ++j) {
        const double w = kTwoPi * (j + 1);
        s -= cos_coef[j] * w * std::sin(w * x);
    }
    for (size_t j = 0; j < sin_coef.size(); ++j) {
        const double w = kTwoPi * (j + 1);
        s += sin_coef[j] * w * std::cos(w * x);
    }
    return s;
}

double TrigPoly::deriv2(double x) const {
    double s = 0;
    for (size_t j = 0; j < cos_coef.size(); ++j) {
        const double w = kTwoPi * (j + 1);
        s -= cos_coef[j] * w * w * std::cos(w * x);
    }
    for (size_t j = 0; j < sin_coef.size(); ++j) {
        const double w = kTwoPi * (j + 1);
        s -= sin_coef[j] * w * w * std::sin(w * x);
    }
    return s;
}

double TrigPoly::sup() const {
    double s = std::abs(constant);
    for (double c : cos_coef) s += std::abs(c);
    for (double c : sin_coef) s += std::abs(c);
    return s;
}

double TrigPoly::sup1() const {
    double s = 0;
    for (size_t j = 0; j < cos_coef.size(); ++j) s += std::abs(cos_coef[j]) * kTwoPi * (j + 1);
    for (size_t j = 0; j < sin_coef.size(); ++j) s += std::abs(sin_coef[j]) * kTwoPi * (j + 1);
    return s;
}

double TrigPoly::sup2() const {
    double s = 0;
    for (size_t j = 0; j < cos_coef.size(); ++j) {
        const double w = kTwoPi * (j + 1);
        s += std::abs(cos_coef[j]) * w * w;
    }
    for (size_t j = 0; j < sin_coef.size(); ++j) {
        const double w = kTwoPi * (j + 1);
        s += std::abs(sin_coef[j]) * w * w;
    }
    return s;
}

LogRoof LogRoof::make(std::vector<Rat> singularities, std::vector<double> c_plus,
                      std::vector<double> c_minus, TrigPoly smooth) {
    if (c_plus.size() != singularities.size() || c_minus.size() != singularities.size())
        throw std::invalid_argument("LogRoof: one constant pair per singularity");
    for (size_t k = 0; k < singularities.size(); ++k) {
        if (!(singularities[k] > 0 && singularities[k] < 1))
            throw std::invalid_argument("LogRoof: singularities must lie in (0,1)");
        if (k > 0 && !(singularities[k - 1] < singularities[k]))
            throw std::invalid_argument("LogRoof: singularities must increase");
        if (!(c_plus[k] > 0) || !(c_minus[k] > 0) || !std::isfinite(c_plus[k]) ||
            !std::isfinite(c_minus[k]))
            throw std::invalid_argument("LogRoof: one-sided constants must be positive");
    }

    LogRoof r;
    r.a_ = std::move(singularities);
    r.cp_ = std::move(c_plus);
    r.cm_ = std::move(c_minus);
    r.e_ = std::move(smooth);
    r.ad_.reserve(r.a_.size());
    for (const Rat& a : r.a_) r.ad_.push_back(to_double(a));
    for (double c : r.cp_) r.cp_total_ += c;
    for (double c : r.cm_) r.cm_total_ += c;

    // Locate min f: dense grid, then golden-section sharpening around the best cell.
    const int n = 100000;
    double best = std::numeric_limits<double>::infinity();
    double best_x = 0.5;
    for (int i = 0; i < n; ++i) {
        const double x = (i + 0.5) / n;
        try {
            const double v = r.eval(x);
            if (v < best) {
                best = v;
                best_x = x;
            }
        } catch (const SingularEval&) {
        }
    }
    auto probe = [&r](double x) {
        try {
            return r.eval(x);
        } catch (const SingularEval&) {
            return std::numeric_limits<double>::infinity();
        }
    };
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = best_x - 1.0 / n, hi = best_x + 1.0 / n;
    double m1 = hi - gr * (hi - lo), m2 = lo + gr * (hi - lo);
    double f1 = probe(m1), f2 = probe(m2);
    for (int it = 0; it < 80; ++it) {
        if (f1 < f2) {
            hi = m2;
            m2 = m1;
            f2 = f1;
            m1 = hi - gr * (hi - lo);
            f1 = probe(m1);
        } else {
            lo = m1;
            m1 = m2;
            f1 = f2;
            m2 = lo + gr * (hi - lo);
            f2 = probe(m2);
        }
    }
    r.floor_ = std::min({best, f1, f2});
    if (!(r.floor_ > 0))
        throw std::invalid_argument("LogRoof: roof must be strictly positive");
    return r;
}

LogRoof LogRoof::aligned(const Iet& iet, std::vector<double> c_plus, std::vector<double> c_minus,
                         TrigPoly smooth) {
    const auto& br = iet.breakpoints();
    std::vector<Rat> sing(br.begin() + 1, br.end() - 1);
    return make(std::move(sing), std::move(c_plus), std::move(c_minus), std::move(smooth));
}

double LogRoof::eval(double x) const {
    double s = e_.eval(x);
    for (size_t k = 0; k < ad_.size(); ++k) {
        const double w = wrap01(x - ad_[k]);
        const double w2 = wrap01(ad_[k] - x);
        const double dist = std::min(w, w2);
        if (dist < kGuard) throw SingularEval(dist);
        s += cp_[k] * (1.0 - std::log(w)) + cm_[k] * (1.0 - std::log(w2));
    }
    return s;
}

double LogRoof::deriv1(double x) const {
    double s = e_.deriv1(x);
    for (size_t k = 0; k < ad_.size(); ++k) {
        const double w = wrap01(x - ad_[k]);
        const double w2 = wrap01(ad_[k] - x);
        const double dist = std::min(w, w2);
        if (dist < kGuard) throw SingularEval(dist);
        s += -cp_[k] / w + cm_[k] / w2;
    }
    return s;
}

double LogRoof::deriv2(double x) const {
    double s = e_.deriv2(x);
    for (size_t k = 0; k < ad_.size(); ++k) {
        const double w = wrap01(x - ad_[k]);
        const double w2 = wrap01(ad_[k] - x);
        const double dist = std::min(w, w2);
        if (dist < kGuard) throw SingularEval(dist);
        s += cp_[k] / (w * w) + cm_[k] / (w2 * w2);
    }
    return s;
}

double LogRoof::distance_to_singularity(double x) const {
    double dist = std::numeric_limits<double>::infinity();
    for (double a : ad_) dist = std::min({dist, wrap01(x - a), wrap01(a - x)});
    return dist;
}

std::string LogRoof::to_json_string() const {
    nlohmann::json j;
    j["C_plus"] = nlohmann::json::array();
    j["C_minus"] = nlohmann::json::array();
    for (double c : cp_) j["C_plus"].push_back(format_double(c));
    for (double c : cm_) j["C_minus"].push_back(format_double(c));
    j["smooth"]["constant"] = format_double(e_.constant);
    j["smooth"]["cos"] = nlohmann::json::array();
    j["smooth"]["sin"] = nlohmann::json::array();
    for (double c : e_.cos_coef) j["smooth"]["cos"].push_back(format_double(c));
    for (double c : e_.sin_coef) j["smooth"]["sin"].push_back(format_double(c));
    return j.dump();
}

namespace {

double number_from(const nlohmann::json& v) {
    if (v.is_string()) return std::stod(v.get<std::string>());
    return v.get<double>();
}

std::vector<double> numbers_from(const nlohmann::json& arr) {
    std::vector<double> out;
    for (const auto& v : arr) out.push_back(number_from(v));
    return out;
}

}  // namespace

LogRoof LogRoof::from_json_string(const std::string& text, const Iet& iet) {
    nlohmann::json j = nlohmann::json::parse(text);
    std::vector<double> cp = numbers_from(j.at("C_plus"));
    std::vector<double> cm = numbers_from(j.at("C_minus"));
    if (static_cast<int>(cp.size()) != iet.size() - 1)
        throw std::invalid_argument("LogRoof: constant count must match interior breakpoints");
    TrigPoly e;
    if (j.contains("smooth")) {
        const auto& s = j.at("smooth");
        if (s.contains("constant")) e.constant = number_from(s.at("constant"));
        if (s.contains("cos")) e.cos_coef = numbers_from(s.at("cos"));
        if (s.contains("sin")) e.sin_coef = numbers_from(s.at("sin"));
    }
    return aligned(iet, std::move(cp), std::move(cm), std::move(e));
}

bool aligned_with(const LogRoof& roof, const Iet& iet) {
    const auto& br = iet.breakpoints();
    const auto& a = roof.singularities();
    if (static_cast<int>(a.size()) != iet.size() - 1) return false;
    for (size_t k = 0; k < a.size(); ++k)
        if (a[k] != br[k + 1]) return false;
    return true;
}

double aux_u(double a, double x) {
    const double w = wrap01(x - a);
    if (w < LogRoof::kGuard) throw SingularEval(w);
    return 1.0 - std::log(w);
}

double aux_v(double a, double x) {
    const double w = wrap01(a - x);
    if (w < LogRoof::kGuard) throw SingularEval(w);
    return 1.0 - std::log(w);
}

double aux_u_tilde(double a, double x) {
    const double w = wrap01(x - a);
    if (w < LogRoof::kGuard) throw SingularEval(w);
    return 1.0 / w;
}

double aux_v_tilde(double a, double x) {
    const double w = wrap01(a - x);
    if (w < LogRoof::kGuard) throw SingularEval(w);
    return 1.0 / w;
}

double AuxSingular::eval(const LogRoof& roof, double x) const {
    const double a = to_double(roof.singularities().at(index));
    switch (kind) {
        case AuxKind::U: return aux_u(a, x);
        case AuxKind::V: return aux_v(a, x);
        case AuxKind::Utilde: return aux_u_tilde(a, x);
        case AuxKind::Vtilde: return aux_v_tilde(a, x);
    }
    throw std::logic_error("AuxSingular: bad kind");
}

AsymmetryCheck check_asymmetric(const std::vector<double>& constants, double tolerance) {
    const int m = static_cast<int>(constants.size());
    if (m > 20) throw ResourceCap("check_asymmetric: more than 20 constants");
    long long pow3 = 1;
    for (int i = 0; i < m; ++i) pow3 *= 3;
    for (long long idx = 0; idx < pow3; ++idx) {
        long long rem = idx;
        double sum = 0;
        bool all_zero = true;
        std::vector<int> coeff(m);
        for (int i = 0; i < m; ++i) {
            const int c = static_cast<int>(rem % 3) - 1;
            rem /= 3;
            coeff[i] = c;
            if (c != 0) all_zero = false;
            sum += c * constants[i];
        }
        if (all_zero) continue;
        if (std::abs(sum) <= tolerance) return {false, std::move(coeff), sum};
    }
    return {true, {}, 0.0};
}

AsymmetryCheck check_asymmetric(const LogRoof& roof, double tolerance) {
    std::vector<double> constants = roof.right_constants();
    constants.insert(constants.end(), roof.left_constants().begin(),
                     roof.left_constants().end());
    return check_asymmetric(constants, tolerance);
}

}  // namespace ietmix
