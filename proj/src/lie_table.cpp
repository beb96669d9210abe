#include "toralg/lie_table.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace toralg {

using nlohmann::json;

Rational SimpleLieTable::structure_constant(int i, int j, int k) const {
    for (const auto& [idx, c] : bracket(i, j))
        if (idx == k) return c;
    return 0;
}

Matrix SimpleLieTable::inverse_form() const {
    if (empty()) return {};
    return invert(form);
}

Matrix SimpleLieTable::adjoint_matrix(int i) const {
    Matrix m(dim(), std::vector<Rational>(dim()));
    for (int j = 0; j < dim(); ++j)
        for (const auto& [k, c] : bracket(i, j)) m[k][j] += c;
    return m;
}

int SimpleLieTable::index_of(const std::string& symbol) const {
    for (int i = 0; i < dim(); ++i)
        if (basis[i] == symbol) return i;
    throw LieTableError("unknown basis symbol '" + symbol + "' in table " + name);
}

Matrix identity_matrix(int n) {
    Matrix m(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
    std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    Matrix r(n, std::vector<Rational>(m));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (a[i][l].is_zero()) continue;
            for (std::size_t j = 0; j < m; ++j)
                if (!b[l][j].is_zero()) r[i][j].add_mul(a[i][l], b[l][j]);
        }
    return r;
}

Rational determinant(Matrix m) {
    const std::size_t n = m.size();
    Rational det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col].is_zero()) ++piv;
        if (piv == n) return 0;
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m[r][col].is_zero()) continue;
            Rational f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return det;
}

Matrix invert(const Matrix& in) {
    const std::size_t n = in.size();
    Matrix a = in;
    Matrix inv = identity_matrix(static_cast<int>(n));
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col].is_zero()) ++piv;
        if (piv == n) throw LieTableError("singular matrix");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        Rational p = a[col][col];
        for (std::size_t c = 0; c < n; ++c) {
            a[col][c] /= p;
            inv[col][c] /= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col].is_zero()) continue;
            Rational f = a[r][col];
            for (std::size_t c = 0; c < n; ++c) {
                a[r][c] -= f * a[col][c];
                inv[r][c] -= f * inv[col][c];
            }
        }
    }
    return inv;
}

namespace {

Rational json_rational(const json& v) {
    if (v.is_string()) return Rational::parse(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long long>());
    throw LieTableError("expected rational string, got " + v.dump());
}

Matrix json_matrix(const json& v, std::size_t rows, std::size_t cols, const char* what) {
    if (!v.is_array() || v.size() != rows) throw LieTableError(std::string(what) + ": wrong number of rows");
    Matrix m;
    for (const auto& row : v) {
        if (!row.is_array() || row.size() != cols) throw LieTableError(std::string(what) + ": wrong row length");
        std::vector<Rational> r;
        for (const auto& e : row) r.push_back(json_rational(e));
        m.push_back(std::move(r));
    }
    return m;
}

}  // namespace

SimpleLieTable parse_lie_table(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw LieTableError(std::string("malformed Lie table: ") + e.what());
    }
    SimpleLieTable t;
    try {
        t.name = j.value("name", std::string("unnamed"));
        for (const auto& b : j.at("basis")) t.basis.push_back(b.get<std::string>());
        const auto d = static_cast<std::size_t>(t.dim());
        t.brackets.assign(d, std::vector<SimpleLieTable::Bracket>(d));
        for (const auto& entry : j.at("brackets")) {
            if (!entry.is_array() || entry.size() != 4) throw LieTableError("bracket entry must be [i, j, k, coefficient]");
            int a = entry[0].get<int>(), b = entry[1].get<int>(), k = entry[2].get<int>();
            if (a < 0 || b < 0 || k < 0 || a >= t.dim() || b >= t.dim() || k >= t.dim())
                throw LieTableError("bracket index out of range: " + entry.dump());
            Rational c = json_rational(entry[3]);
            if (c.is_zero()) continue;
            auto& br = t.brackets[a][b];
            bool merged = false;
            for (auto& [idx, coef] : br)
                if (idx == k) {
                    coef += c;
                    merged = true;
                }
            if (!merged) br.emplace_back(k, c);
        }
        t.form = json_matrix(j.at("form"), d, d, "form");
        t.dual_coxeter = j.at("dual_coxeter").get<int>();
        const auto& w = j.at("weights");
        const auto& ff = w.at("fundamental_form");
        std::size_t rank = ff.size();
        t.fundamental_form = json_matrix(ff, rank, rank, "weights.fundamental_form");
        for (const auto& x : w.at("highest_root")) t.highest_root.push_back(x.get<int>());
        if (t.highest_root.size() != rank) throw LieTableError("weights.highest_root length must equal the rank");
    } catch (const json::exception& e) {
        throw LieTableError(std::string("malformed Lie table: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw LieTableError(std::string("malformed Lie table: ") + e.what());
    }
    return t;
}

SimpleLieTable load_lie_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw LieTableError("cannot open Lie table " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_lie_table(ss.str());
}

std::string lie_table_to_json(const SimpleLieTable& t) {
    json j;
    j["name"] = t.name;
    j["basis"] = t.basis;
    json br = json::array();
    for (int a = 0; a < t.dim(); ++a)
        for (int b = 0; b < t.dim(); ++b)
            for (const auto& [k, c] : t.bracket(a, b)) br.push_back({a, b, k, c.str()});
    j["brackets"] = br;
    auto mat = [](const Matrix& m) {
        json out = json::array();
        for (const auto& row : m) {
            json r = json::array();
            for (const auto& e : row) r.push_back(e.str());
            out.push_back(r);
        }
        return out;
    };
    j["form"] = mat(t.form);
    j["dual_coxeter"] = t.dual_coxeter;
    j["weights"] = {{"fundamental_form", mat(t.fundamental_form)}, {"highest_root", t.highest_root}};
    return j.dump(1);
}

Matrix sl_basis_matrix(int index, int n) {
    Matrix m(n, std::vector<Rational>(n));
    int off = n * (n - 1);
    if (index < off) {
        int a = index / (n - 1);
        int rem = index % (n - 1);
        int b = rem < a ? rem : rem + 1;
        m[a][b] = 1;
    } else {
        int i = index - off;
        m[i][i] = 1;
        m[i + 1][i + 1] = -1;
    }
    return m;
}

std::vector<Rational> sl_coordinates(const Matrix& x, int n) {
    std::vector<Rational> c(n * n - 1);
    int idx = 0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (a != b) c[idx++] = x[a][b];
    Rational running = 0;
    for (int i = 0; i + 1 < n; ++i) {
        running += x[i][i];
        c[idx++] = running;
    }
    Rational trace = running + x[n - 1][n - 1];
    if (!trace.is_zero()) throw LieTableError("sl_coordinates: matrix is not traceless");
    return c;
}

SimpleLieTable make_sl(int n) {
    if (n < 2) throw LieTableError("sl_N requires N >= 2");
    SimpleLieTable t;
    t.name = "sl" + std::to_string(n);
    const int d = n * n - 1;
    std::vector<Matrix> mats;
    for (int i = 0; i < d; ++i) {
        mats.push_back(sl_basis_matrix(i, n));
        if (i < n * (n - 1)) {
            int a = i / (n - 1), rem = i % (n - 1), b = rem < a ? rem : rem + 1;
            t.basis.push_back("E" + std::to_string(a + 1) + "_" + std::to_string(b + 1));
        } else {
            t.basis.push_back("H" + std::to_string(i - n * (n - 1) + 1));
        }
    }
    t.brackets.assign(d, std::vector<SimpleLieTable::Bracket>(d));
    t.form.assign(d, std::vector<Rational>(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Matrix xy = multiply(mats[i], mats[j]);
            Matrix yx = multiply(mats[j], mats[i]);
            Matrix comm(n, std::vector<Rational>(n));
            Rational tr = 0;
            for (int a = 0; a < n; ++a) {
                tr += xy[a][a];
                for (int b = 0; b < n; ++b) comm[a][b] = xy[a][b] - yx[a][b];
            }
            t.form[i][j] = tr;
            auto coords = sl_coordinates(comm, n);
            for (int k = 0; k < d; ++k)
                if (!coords[k].is_zero()) t.brackets[i][j].emplace_back(k, coords[k]);
        }
    t.dual_coxeter = n;
    t.fundamental_form.assign(n - 1, std::vector<Rational>(n - 1));
    for (int i = 1; i < n; ++i)
        for (int j = 1; j < n; ++j) t.fundamental_form[i - 1][j - 1] = Rational(std::min(i, j) * (n - std::max(i, j)), n);
    t.highest_root.assign(n - 1, 0);
    t.highest_root.front() += 1;
    t.highest_root.back() += 1;
    return t;
}

SimpleLieTable make_zero_algebra() {
    SimpleLieTable t;
    t.name = "zero";
    return t;
}

LieValidationReport validate_lie_table(const SimpleLieTable& t) {
    LieValidationReport rep;
    const int d = t.dim();
    if (d == 0) {
        rep.rank_zero = true;
        return rep;
    }
    auto name = [&](int i) { return t.basis[i]; };
    auto fail = [&](std::string msg) {
        rep.ok = false;
        rep.violations.push_back(std::move(msg));
    };
    // dense structure constants for the cubic checks
    std::vector<std::vector<std::vector<Rational>>> c(d, std::vector<std::vector<Rational>>(d, std::vector<Rational>(d)));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (const auto& [k, v] : t.bracket(i, j)) c[i][j][k] = v;

    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j)
            for (int k = 0; k < d; ++k)
                if (c[i][j][k] + c[j][i][k] != 0) {
                    fail("antisymmetry fails at (" + name(i) + "," + name(j) + ") component " + name(k));
                    break;
                }

    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            for (int k = j + 1; k < d; ++k) {
                // [g_i,[g_j,g_k]] + [g_j,[g_k,g_i]] + [g_k,[g_i,g_j]]
                std::vector<Rational> acc(d);
                auto term = [&](int a, int b, int e) {
                    for (int m = 0; m < d; ++m) {
                        if (c[b][e][m].is_zero()) continue;
                        for (int l = 0; l < d; ++l)
                            if (!c[a][m][l].is_zero()) acc[l].add_mul(c[b][e][m], c[a][m][l]);
                    }
                };
                term(i, j, k);
                term(j, k, i);
                term(k, i, j);
                for (const auto& v : acc)
                    if (!v.is_zero()) {
                        fail("Jacobi fails at (" + name(i) + "," + name(j) + "," + name(k) + ")");
                        break;
                    }
            }

    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            if (t.form[i][j] != t.form[j][i]) fail("form not symmetric at (" + name(i) + "," + name(j) + ")");

    // (x | [y, z]) = ([x, y] | z)
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) {
                Rational lhs = 0, rhs = 0;
                for (int m = 0; m < d; ++m) {
                    if (!c[j][k][m].is_zero()) lhs.add_mul(c[j][k][m], t.form[i][m]);
                    if (!c[i][j][m].is_zero()) rhs.add_mul(c[i][j][m], t.form[m][k]);
                }
                if (lhs != rhs)
                    fail("invariance fails at (" + name(i) + "," + name(j) + "," + name(k) + "): " + lhs.str() +
                         " vs " + rhs.str());
            }

    if (determinant(t.form).is_zero()) fail("form is singular");
    return rep;
}

Rational casimir_eigenvalue(const SimpleLieTable& t, const std::vector<int>& labels) {
    if (static_cast<int>(labels.size()) != t.rank())
        throw LieTableError("highest weight has " + std::to_string(labels.size()) + " labels, rank is " +
                            std::to_string(t.rank()));
    for (int l : labels)
        if (l < 0) throw LieTableError("highest weight is not dominant integral");
    Rational omega = 0;
    for (int i = 0; i < t.rank(); ++i)
        for (int j = 0; j < t.rank(); ++j)
            omega += Rational(labels[i]) * t.fundamental_form[i][j] * Rational(labels[j] + 2);
    return omega;
}

}  // namespace toralg
