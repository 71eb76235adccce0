#include <abmetric/config.hpp>

#include <abmetric/expr.hpp>

#include <algorithm>
#include <cctype>
#include <sstream>

namespace abm {

namespace {

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

struct Entry {
    std::string value;
    int line = 0;
    mutable bool used = false;
};

using Doc = std::map<std::string, Entry>;  // "section.key" -> entry

Doc parse_lines(const std::string& text) {
    Doc doc;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']') throw ParseError(lineno, "unterminated section header");
            section = trim(t.substr(1, t.size() - 2));
            if (section.empty()) throw ParseError(lineno, "empty section name");
            continue;
        }
        const size_t eq = t.find('=');
        if (eq == std::string::npos) throw ParseError(lineno, "expected 'key = value'");
        const std::string key = trim(t.substr(0, eq));
        if (key.empty()) throw ParseError(lineno, "empty key");
        if (section.empty()) throw ParseError(lineno, "key outside any [section]");
        const std::string full = section + "." + key;
        if (doc.count(full)) throw ParseError(lineno, "duplicate key '" + full + "'");
        doc[full] = Entry{trim(t.substr(eq + 1)), lineno, false};
    }
    return doc;
}

double to_double(const std::string& field, const Entry& e) {
    size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(e.value, &used);
    } catch (const std::exception&) {
        throw ValidationError(field, "expected a number, got '" + e.value + "' (line " +
                                         std::to_string(e.line) + ")");
    }
    if (trim(e.value.substr(used)).size())
        throw ValidationError(field, "trailing characters after number (line " + std::to_string(e.line) + ")");
    return v;
}

long to_int(const std::string& field, const Entry& e) {
    const double v = to_double(field, e);
    if (v != std::floor(v)) throw ValidationError(field, "expected an integer");
    return static_cast<long>(v);
}

std::vector<double> to_vector(const std::string& field, const std::string& value, int line) {
    std::vector<double> out;
    std::istringstream in(value);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty()) throw ValidationError(field, "empty vector entry (line " + std::to_string(line) + ")");
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ValidationError(field, "bad vector entry '" + item + "' (line " + std::to_string(line) + ")");
        }
    }
    if (out.empty()) throw ValidationError(field, "empty vector");
    return out;
}

std::vector<std::vector<double>> to_rows(const std::string& field, const Entry& e) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(e.value);
    std::string row;
    while (std::getline(in, row, ';')) {
        row = trim(row);
        if (row.empty()) continue;
        rows.push_back(to_vector(field, row, e.line));
    }
    if (rows.empty()) throw ValidationError(field, "empty matrix");
    return rows;
}

std::vector<std::string> to_strings(const Entry& e) {
    std::vector<std::string> out;
    std::istringstream in(e.value);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(trim(item));
    return out;
}

class Reader {
public:
    explicit Reader(Doc doc) : doc_(std::move(doc)) {}

    const Entry* find(const std::string& field) const {
        auto it = doc_.find(field);
        if (it == doc_.end()) return nullptr;
        it->second.used = true;
        return &it->second;
    }

    void check_all_used() const {
        for (const auto& [k, e] : doc_)
            if (!e.used) throw ValidationError(k, "unknown key (line " + std::to_string(e.line) + ")");
    }

private:
    Doc doc_;
};

}  // namespace

FixtureConfig parse_config(const std::string& text) {
    Reader rd(parse_lines(text));
    FixtureConfig cfg;

    if (const Entry* e = rd.find("fixture.name")) cfg.name = e->value;
    if (const Entry* e = rd.find("fixture.dimension")) cfg.n = static_cast<int>(to_int("fixture.dimension", *e));
    if (cfg.n < 2 || cfg.n > 9) throw ValidationError("fixture.dimension", "dimension must be in [2, 9]");

    if (const Entry* e = rd.find("alpha.kind")) cfg.alpha_kind = e->value;
    if (const Entry* e = rd.find("alpha.entries")) cfg.alpha_entries = to_strings(*e);
    if (const Entry* e = rd.find("alpha.factor")) cfg.alpha_factor = e->value;

    if (const Entry* e = rd.find("beta.kind")) cfg.beta_kind = e->value;
    if (const Entry* e = rd.find("beta.vector")) cfg.beta_vector = to_vector("beta.vector", e->value, e->line);
    if (const Entry* e = rd.find("beta.matrix")) cfg.beta_matrix = to_rows("beta.matrix", *e);

    if (const Entry* e = rd.find("phi.family")) cfg.phi_family = e->value;
    const Entry* m_entry = rd.find("phi.m");
    if (m_entry) cfg.phi_m = to_double("phi.m", *m_entry);
    if (cfg.phi_family == "power" && !m_entry) throw ValidationError("phi.m", "power family requires m");
    if (const Entry* e = rd.find("phi.k1")) cfg.phi_k1 = to_double("phi.k1", *e);
    if (const Entry* e = rd.find("phi.k2")) cfg.phi_k2 = to_double("phi.k2", *e);
    if (const Entry* e = rd.find("phi.k3")) cfg.phi_k3 = to_double("phi.k3", *e);
    if (const Entry* e = rd.find("phi.coeffs")) cfg.phi_coeffs = to_vector("phi.coeffs", e->value, e->line);
    if (const Entry* e = rd.find("phi.radius")) cfg.phi_radius = to_double("phi.radius", *e);
    if (const Entry* e = rd.find("phi.b0")) cfg.phi_b0 = to_double("phi.b0", *e);

    if (const Entry* e = rd.find("probe.points")) {
        for (auto& row : to_rows("probe.points", *e)) cfg.points.push_back(row);
    }
    if (const Entry* e = rd.find("probe.directions"))
        cfg.directions = static_cast<int>(to_int("probe.directions", *e));
    if (const Entry* e = rd.find("probe.grid")) cfg.grid = static_cast<int>(to_int("probe.grid", *e));
    if (const Entry* e = rd.find("probe.seed")) cfg.seed = static_cast<std::uint64_t>(to_int("probe.seed", *e));
    if (const Entry* e = rd.find("probe.tol_profile")) cfg.tol_profile = e->value;
    if (const Entry* e = rd.find("probe.b2")) cfg.b2_list = to_vector("probe.b2", e->value, e->line);
    if (const Entry* e = rd.find("probe.s")) cfg.s_list = to_vector("probe.s", e->value, e->line);

    rd.check_all_used();
    return cfg;
}

namespace {

MetricField make_alpha(const FixtureConfig& cfg) {
    const int n = cfg.n;
    if (cfg.alpha_kind == "euclidean") return MetricField::euclidean(n);
    if (cfg.alpha_kind == "diagonal") {
        if (static_cast<int>(cfg.alpha_entries.size()) != n)
            throw ValidationError("alpha.entries", "need exactly one expression per axis");
        std::vector<Expression> ex;
        for (const auto& s : cfg.alpha_entries) {
            try {
                ex.push_back(Expression::parse(s, n));
            } catch (const ParseError& p) {
                throw ValidationError("alpha.entries", p.what());
            }
        }
        MetricField m;
        m.n = n;
        m.a = [ex, n](const Vec& x) {
            Mat a = Mat::Zero(n, n);
            for (int i = 0; i < n; ++i) a(i, i) = ex[static_cast<size_t>(i)].eval(x);
            return a;
        };
        m.da = [ex, n](const Vec& x) {
            Ten3 d(static_cast<size_t>(n), Mat::Zero(n, n));
            for (int i = 0; i < n; ++i) {
                const auto [v, g] = ex[static_cast<size_t>(i)].eval_with_gradient(x);
                (void)v;
                for (int k = 0; k < n; ++k) d[static_cast<size_t>(k)](i, i) = g[k];
            }
            return d;
        };
        return m;
    }
    if (cfg.alpha_kind == "conformal") {
        if (cfg.alpha_factor.empty()) throw ValidationError("alpha.factor", "conformal kind requires factor");
        Expression ex;
        try {
            ex = Expression::parse(cfg.alpha_factor, n);
        } catch (const ParseError& p) {
            throw ValidationError("alpha.factor", p.what());
        }
        MetricField m;
        m.n = n;
        m.a = [ex, n](const Vec& x) { return Mat(ex.eval(x) * Mat::Identity(n, n)); };
        m.da = [ex, n](const Vec& x) {
            const auto [v, g] = ex.eval_with_gradient(x);
            (void)v;
            Ten3 d(static_cast<size_t>(n), Mat::Zero(n, n));
            for (int k = 0; k < n; ++k) d[static_cast<size_t>(k)] = g[k] * Mat::Identity(n, n);
            return d;
        };
        return m;
    }
    if (cfg.alpha_kind == "funk_ball") {
        // a_ij = [(1-|x|^2) delta_ij + x_i x_j] / (1-|x|^2)^2 on the unit ball
        MetricField m;
        m.n = n;
        m.a = [n](const Vec& x) {
            const double w = 1.0 - x.squaredNorm();
            if (w <= 0.0) throw OutOfDomain("funk_ball metric outside the unit ball");
            return Mat((w * Mat::Identity(n, n) + x * x.transpose()) / (w * w));
        };
        m.da = [n](const Vec& x) {
            const double w = 1.0 - x.squaredNorm();
            if (w <= 0.0) throw OutOfDomain("funk_ball metric outside the unit ball");
            Ten3 d(static_cast<size_t>(n), Mat::Zero(n, n));
            for (int k = 0; k < n; ++k) {
                Mat& dk = d[static_cast<size_t>(k)];
                dk = (2.0 * x[k] / (w * w)) * Mat::Identity(n, n);
                for (int i = 0; i < n; ++i) {
                    for (int j = 0; j < n; ++j) {
                        double t = 4.0 * x[i] * x[j] * x[k] / (w * w * w);
                        if (i == k) t += x[j] / (w * w);
                        if (j == k) t += x[i] / (w * w);
                        dk(i, j) += t;
                    }
                }
            }
            return d;
        };
        return m;
    }
    throw ValidationError("alpha.kind", "unknown kind '" + cfg.alpha_kind + "'");
}

OneFormField make_beta(const FixtureConfig& cfg) {
    const int n = cfg.n;
    if (cfg.beta_kind == "constant") {
        if (static_cast<int>(cfg.beta_vector.size()) != n)
            throw ValidationError("beta.vector", "need exactly dimension entries");
        Vec v(n);
        for (int i = 0; i < n; ++i) v[i] = cfg.beta_vector[static_cast<size_t>(i)];
        return OneFormField::constant(v);
    }
    if (cfg.beta_kind == "linear") {
        if (static_cast<int>(cfg.beta_matrix.size()) != n)
            throw ValidationError("beta.matrix", "need dimension rows");
        Mat mmat(n, n);
        for (int i = 0; i < n; ++i) {
            if (static_cast<int>(cfg.beta_matrix[static_cast<size_t>(i)].size()) != n)
                throw ValidationError("beta.matrix", "row " + std::to_string(i + 1) + " has wrong arity");
            for (int j = 0; j < n; ++j) mmat(i, j) = cfg.beta_matrix[static_cast<size_t>(i)][static_cast<size_t>(j)];
        }
        return OneFormField::linear(mmat);
    }
    if (cfg.beta_kind == "funk_ball") {
        OneFormField f;
        f.n = n;
        f.b = [](const Vec& x) {
            const double w = 1.0 - x.squaredNorm();
            if (w <= 0.0) throw OutOfDomain("funk_ball form outside the unit ball");
            return Vec(x / w);
        };
        f.db = [n](const Vec& x) {
            const double w = 1.0 - x.squaredNorm();
            if (w <= 0.0) throw OutOfDomain("funk_ball form outside the unit ball");
            return Mat(Mat::Identity(n, n) / w + 2.0 * x * x.transpose() / (w * w));
        };
        return f;
    }
    throw ValidationError("beta.kind", "unknown kind '" + cfg.beta_kind + "'");
}

PhiSpec make_phi(const FixtureConfig& cfg) {
    PhiSpec phi;
    if (cfg.phi_family == "riemannian") phi = PhiSpec::riemannian();
    else if (cfg.phi_family == "randers") phi = PhiSpec::randers();
    else if (cfg.phi_family == "power") phi = PhiSpec::power(cfg.phi_m);
    else if (cfg.phi_family == "quadratic") phi = PhiSpec::quadratic();
    else if (cfg.phi_family == "randers_type") {
        if (!(cfg.phi_k1 > 0.0)) throw ValidationError("phi.k1", "randers_type requires k1 > 0");
        phi = PhiSpec::randers_type(cfg.phi_k1, cfg.phi_k2, cfg.phi_k3);
    } else if (cfg.phi_family == "taylor") {
        if (cfg.phi_coeffs.empty()) throw ValidationError("phi.coeffs", "taylor family requires coeffs");
        if (!(cfg.phi_radius > 0.0)) throw ValidationError("phi.radius", "taylor family requires radius > 0");
        phi = PhiSpec::taylor(cfg.phi_coeffs, cfg.phi_radius);
    } else
        throw ValidationError("phi.family", "unknown family '" + cfg.phi_family + "'");
    if (cfg.phi_b0 > 0.0) phi.b0 = cfg.phi_b0;
    if (!(phi.value(0.0) > 0.0)) throw ValidationError("phi", "phi(0) must be positive");
    return phi;
}

}  // namespace

Fixture build_fixture(const FixtureConfig& cfg) {
    Fixture fx;
    fx.cfg = cfg;
    fx.fm.alpha = make_alpha(cfg);
    fx.fm.beta = make_beta(cfg);
    fx.fm.phi = make_phi(cfg);
    if (cfg.tol_profile == "strict") fx.tol = Tolerances::strict();
    else if (cfg.tol_profile == "fd") fx.tol = Tolerances::defaults();
    else throw ValidationError("probe.tol_profile", "expected 'strict' or 'fd'");

    if (cfg.points.empty()) {
        Vec x(cfg.n);
        const double seed_pt[9] = {0.3, 0.7, 0.1, -0.2, 0.4, -0.1, 0.2, 0.5, -0.3};
        for (int i = 0; i < cfg.n; ++i) x[i] = seed_pt[i];
        fx.points.push_back(x);
    } else {
        for (size_t ip = 0; ip < cfg.points.size(); ++ip) {
            const auto& row = cfg.points[ip];
            if (static_cast<int>(row.size()) != cfg.n)
                throw ValidationError("probe.points", "point " + std::to_string(ip + 1) + " has wrong arity");
            Vec x(cfg.n);
            for (int i = 0; i < cfg.n; ++i) x[i] = row[static_cast<size_t>(i)];
            fx.points.push_back(x);
        }
    }
    const bool ball = cfg.alpha_kind == "funk_ball" || cfg.beta_kind == "funk_ball";
    for (const Vec& x : fx.points) {
        if (ball && x.norm() >= 1.0)
            throw ValidationError("probe.points", "funk_ball fixture requires probe points inside the unit ball");
        // beta must stay inside the phi validity radius at every probe point
        const Mat a = fx.fm.alpha.a(x);
        const Vec b = fx.fm.beta.b(x);
        const double b2 = b.dot(a.ldlt().solve(b));
        if (b2 >= fx.fm.phi.b0 * fx.fm.phi.b0)
            throw ValidationError("probe.points", "||beta||_alpha >= b0 at a probe point");
    }
    fx.directions = cfg.directions > 0 ? cfg.directions : 4 * cfg.n;

    // regularity of phi up to the largest probe b
    double bmax = 0.0;
    for (const Vec& x : fx.points) {
        const Mat a = fx.fm.alpha.a(x);
        const Vec b = fx.fm.beta.b(x);
        bmax = std::max(bmax, std::sqrt(b.dot(a.ldlt().solve(b))));
    }
    for (double b2 : cfg.b2_list) bmax = std::max(bmax, std::sqrt(b2));
    if (bmax > 0.0) {
        const ValidationReport vr = phi_validate(fx.fm.phi, std::min(bmax * 1.05, fx.fm.phi.b0), 64);
        if (!vr.pass)
            throw ValidationError("phi", "regularity fails below b = " + std::to_string(bmax) +
                                             " (min " + std::to_string(vr.min_regularity) + ")");
    }
    return fx;
}

}  // namespace abm
