#include "permsep/states.hpp"

#include "permsep/error.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

namespace permsep {

namespace {

using Vector = std::vector<Complex>;

void require(bool ok, const std::string& message) {
    if (!ok) throw InvalidArgument(message);
}

// Hermitian by construction: the lower triangle mirrors the upper.
CMatrix outer_sum(const std::vector<Vector>& vectors, const std::vector<double>& weights, std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t v = 0; v < vectors.size(); ++v) {
        const Vector& x = vectors[v];
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = r; c < n; ++c) m(r, c) += weights[v] * x[r] * std::conj(x[c]);
    }
    for (std::size_t r = 0; r < n; ++r) {
        m(r, r) = Complex(m(r, r).real(), 0.0);
        for (std::size_t c = r + 1; c < n; ++c) m(c, r) = std::conj(m(r, c));
    }
    return m;
}

DensityMatrix pure(const Subsystems& dims, Vector psi) {
    double norm2 = 0.0;
    for (const Complex& z : psi) norm2 += std::norm(z);
    const double scale = 1.0 / std::sqrt(norm2);
    for (Complex& z : psi) z *= scale;
    return DensityMatrix(dims, outer_sum({psi}, {1.0}, psi.size()));
}

Vector random_unit_vector(std::size_t n, Rng& rng) {
    Vector v(n);
    double norm2 = 0.0;
    for (Complex& z : v) {
        z = rng.complex_normal();
        norm2 += std::norm(z);
    }
    const double scale = 1.0 / std::sqrt(norm2);
    for (Complex& z : v) z *= scale;
    return v;
}

Vector kron(const Vector& a, const Vector& b) {
    Vector out;
    out.reserve(a.size() * b.size());
    for (const Complex& x : a)
        for (const Complex& y : b) out.push_back(x * y);
    return out;
}

Vector random_product_vector(const Subsystems& dims, Rng& rng) {
    Vector psi{Complex(1.0)};
    for (int d : dims.dims()) psi = kron(psi, random_unit_vector(static_cast<std::size_t>(d), rng));
    return psi;
}

CMatrix normalize_trace(CMatrix m) {
    double tr = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) tr += m(i, i).real();
    for (Complex& z : m.data()) z /= tr;
    return m;
}

bool all_equal(const Subsystems& dims) {
    for (int d : dims.dims())
        if (d != dims.dim(1)) return false;
    return true;
}

void require_bipartite_square(const Subsystems& dims, const char* name) {
    require(dims.parties() == 2, std::string(name) + " state requires exactly 2 parties");
    require(dims.dim(1) == dims.dim(2), std::string(name) + " state requires equal dimensions");
    require(dims.dim(1) >= 2, std::string(name) + " state requires dimension >= 2");
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

[[noreturn]] void malformed(const std::string& why) {
    throw InvalidState("format", 0.0, "malformed state file: " + why);
}

} // namespace

// ----------------------------------------------------------------------- Rng

double Rng::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
    if (spare_) {
        const double z = *spare_;
        spare_.reset();
        return z;
    }
    const double u1 = 1.0 - uniform(); // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    return r * std::cos(theta);
}

Complex Rng::complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
}

// ---------------------------------------------------------------- generators

DensityMatrix bell_state(int d) {
    const Subsystems dims({d, d});
    require_bipartite_square(dims, "Bell");
    Vector psi(dims.total());
    for (int i = 0; i < d; ++i) psi[static_cast<std::size_t>(i * d + i)] = 1.0;
    return pure(dims, std::move(psi));
}

DensityMatrix ghz_state(int parties, int d) {
    require(parties >= 2, "GHZ state requires at least 2 parties");
    require(d >= 2, "GHZ state requires dimension >= 2");
    const Subsystems dims = Subsystems::uniform(parties, d);
    Vector psi(dims.total());
    // |i...i> has index i * (1 + d + d^2 + ...).
    std::size_t repunit = 0;
    for (int k = 0; k < parties; ++k) repunit = repunit * static_cast<std::size_t>(d) + 1;
    for (int i = 0; i < d; ++i) psi[static_cast<std::size_t>(i) * repunit] = 1.0;
    return pure(dims, std::move(psi));
}

DensityMatrix w_state(int parties) {
    require(parties >= 2, "W state requires at least 2 parties");
    const Subsystems dims = Subsystems::uniform(parties, 2);
    Vector psi(dims.total());
    for (int k = 0; k < parties; ++k) psi[std::size_t{1} << k] = 1.0;
    return pure(dims, std::move(psi));
}

DensityMatrix werner_state(double p, int d) {
    require(p >= 0.0 && p <= 1.0, "Werner weight p must lie in [0, 1]");
    const Subsystems dims({d, d});
    require_bipartite_square(dims, "Werner");
    const auto n = dims.total();
    const auto du = static_cast<std::size_t>(d);
    const double anti_weight = p / (static_cast<double>(d * (d - 1)) / 2.0);
    const double mixed_weight = (1.0 - p) / static_cast<double>(n);
    CMatrix m(n, n);
    // P_anti = (I - F)/2, F|ab> = |ba>.
    for (std::size_t a = 0; a < du; ++a)
        for (std::size_t b = 0; b < du; ++b) {
            const std::size_t ab = a * du + b, ba = b * du + a;
            m(ab, ab) += 0.5 * anti_weight + mixed_weight;
            m(ab, ba) -= 0.5 * anti_weight;
        }
    return DensityMatrix(dims, std::move(m));
}

DensityMatrix isotropic_state(double f, int d) {
    require(f >= 0.0 && f <= 1.0, "isotropic fidelity f must lie in [0, 1]");
    const Subsystems dims({d, d});
    require_bipartite_square(dims, "isotropic");
    const auto n = dims.total();
    const auto du = static_cast<std::size_t>(d);
    const double rest = (1.0 - f) / static_cast<double>(n - 1);
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = rest;
    const double phi = (f - rest) / static_cast<double>(d);
    for (std::size_t a = 0; a < du; ++a)
        for (std::size_t b = 0; b < du; ++b) m(a * du + a, b * du + b) += phi;
    return DensityMatrix(dims, std::move(m));
}

DensityMatrix maximally_mixed(const Subsystems& dims) {
    const auto n = dims.total();
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0 / static_cast<double>(n);
    return DensityMatrix(dims, std::move(m));
}

DensityMatrix random_mixed(const Subsystems& dims, int rank, Rng& rng) {
    require(rank >= 0, "rank must be >= 1 (or 0 for full rank)");
    const auto n = dims.total();
    require(static_cast<std::size_t>(rank) <= n, "rank exceeds the total dimension");
    const auto r = rank == 0 ? n : static_cast<std::size_t>(rank);
    // Columns of G drawn one at a time: G G^H = sum of column outer products.
    std::vector<Vector> columns(r, Vector(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < r; ++k) columns[k][i] = rng.complex_normal();
    return DensityMatrix(dims, normalize_trace(outer_sum(columns, std::vector<double>(r, 1.0), n)));
}

DensityMatrix random_separable(const Subsystems& dims, int terms, Rng& rng) {
    require(terms >= 1, "terms must be >= 1");
    std::vector<Vector> products;
    std::vector<double> weights;
    double total = 0.0;
    for (int t = 0; t < terms; ++t) {
        products.push_back(random_product_vector(dims, rng));
        weights.push_back(-std::log(1.0 - rng.uniform()));
        total += weights.back();
    }
    for (double& w : weights) w /= total;
    return DensityMatrix(dims, normalize_trace(outer_sum(products, weights, dims.total())));
}

DensityMatrix random_product_pure(const Subsystems& dims, Rng& rng) {
    return pure(dims, random_product_vector(dims, rng));
}

DensityMatrix generate(const StateSpec& spec) {
    const Subsystems& dims = spec.dims;
    Rng rng(spec.seed.value_or(kDefaultSeed));
    switch (spec.kind) {
    case StateKind::Bell:
        require_bipartite_square(dims, "Bell");
        return bell_state(dims.dim(1));
    case StateKind::Ghz:
        require(all_equal(dims), "GHZ state requires equal dimensions");
        return ghz_state(dims.parties(), dims.dim(1));
    case StateKind::W:
        require(all_equal(dims) && dims.dim(1) == 2, "W state requires qubits (all dimensions 2)");
        return w_state(dims.parties());
    case StateKind::Werner:
        require_bipartite_square(dims, "Werner");
        return werner_state(spec.parameter, dims.dim(1));
    case StateKind::Isotropic:
        require_bipartite_square(dims, "isotropic");
        return isotropic_state(spec.parameter, dims.dim(1));
    case StateKind::MaximallyMixed:
        return maximally_mixed(dims);
    case StateKind::RandomMixed:
        return random_mixed(dims, spec.rank, rng);
    case StateKind::RandomSeparable:
        return random_separable(dims, spec.terms, rng);
    case StateKind::ProductPure:
        return random_product_pure(dims, rng);
    }
    throw InvalidArgument("unknown state kind");
}

// ----------------------------------------------------------------- file format

std::string to_json(const DensityMatrix& rho) {
    std::ostringstream out;
    out << "{\"dims\": [";
    for (std::size_t i = 0; i < rho.subsystems().dims().size(); ++i) {
        if (i) out << ", ";
        out << rho.subsystems().dims()[i];
    }
    out << "], \"matrix\": [\n";
    const CMatrix& m = rho.entries();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        out << "  [";
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (c) out << ", ";
            out << '[' << format_double(m(r, c).real()) << ", " << format_double(m(r, c).imag()) << ']';
        }
        out << (r + 1 < m.rows() ? "],\n" : "]\n");
    }
    out << "]}\n";
    return out.str();
}

DensityMatrix from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        malformed(e.what());
    }
    if (!doc.is_object() || !doc.contains("dims") || !doc.contains("matrix")) {
        malformed("expected an object with \"dims\" and \"matrix\"");
    }
    const auto& jd = doc["dims"];
    if (!jd.is_array() || jd.empty()) malformed("\"dims\" must be a non-empty array");
    std::vector<int> dims;
    for (const auto& d : jd) {
        if (!d.is_number_integer() || d.get<long long>() < 1 || d.get<long long>() > 1 << 16) {
            malformed("\"dims\" entries must be positive integers");
        }
        dims.push_back(d.get<int>());
    }
    std::optional<Subsystems> subsystems;
    try {
        subsystems.emplace(std::move(dims));
    } catch (const Error& e) {
        malformed(e.what());
    }
    const auto& jm = doc["matrix"];
    if (!jm.is_array()) malformed("\"matrix\" must be an array of rows");
    const std::size_t rows = jm.size();
    const std::size_t cols = rows ? (jm[0].is_array() ? jm[0].size() : 0) : 0;
    CMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const auto& row = jm[r];
        if (!row.is_array() || row.size() != cols) malformed("row " + std::to_string(r) + " has the wrong length");
        for (std::size_t c = 0; c < cols; ++c) {
            const auto& z = row[c];
            if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
                malformed("entry (" + std::to_string(r) + ", " + std::to_string(c) + ") must be [re, im]");
            }
            m(r, c) = Complex(z[0].get<double>(), z[1].get<double>());
        }
    }
    return DensityMatrix(*subsystems, std::move(m));
}

void write_state(const DensityMatrix& rho, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    out << to_json(rho);
    if (!out) throw Error("failed writing " + path.string());
}

DensityMatrix read_state(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open state file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json(buf.str());
}

} // namespace permsep
