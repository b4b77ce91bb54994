#pragma once

// Text formats. All real values are written with 17 significant digits so
// that writer -> parser round trips are bit-exact; '#' starts a comment in
// the line-oriented formats.

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "hil/barcode.hpp"
#include "hil/common.hpp"
#include "hil/filtration.hpp"
#include "hil/grid_module.hpp"
#include "hil/metric_space.hpp"

namespace hil {

namespace detail {

inline std::string strip_comment(const std::string& line) {
    auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

inline std::vector<std::string> split_ws(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

inline std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

inline bool is_numeric(const std::string& tok) {
    if (tok.empty()) return false;
    try {
        std::size_t pos = 0;
        (void)std::stod(tok, &pos);
        return pos == tok.size();
    } catch (...) {
        return false;
    }
}

}  // namespace detail

// --- distance matrix: CSV, optional label header row ------------------------

inline FiniteMetricSpace read_distance_matrix(std::istream& in, double tol = kDefaultTol) {
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        line = detail::strip_comment(line);
        auto cells = detail::split_csv(line);
        while (!cells.empty() && cells.back().empty()) cells.pop_back();
        if (!cells.empty()) rows.push_back(std::move(cells));
    }
    if (rows.empty()) throw parse_error("distance matrix file is empty");
    std::vector<std::string> labels;
    std::size_t first = 0;
    bool header = false;
    for (const auto& tok : rows[0])
        if (!detail::is_numeric(tok)) header = true;
    if (header) {
        labels = rows[0];
        first = 1;
    }
    std::vector<std::vector<double>> matrix;
    for (std::size_t r = first; r < rows.size(); ++r) {
        std::vector<double> vals;
        for (const auto& tok : rows[r]) vals.push_back(parse_value(tok));
        matrix.push_back(std::move(vals));
    }
    return validate_metric(matrix, labels, tol);
}

inline void write_distance_matrix(std::ostream& out, const FiniteMetricSpace& p) {
    for (int i = 0; i < p.size(); ++i) {
        if (i) out << ',';
        out << p.labels()[i];
    }
    out << '\n';
    for (int i = 0; i < p.size(); ++i) {
        for (int j = 0; j < p.size(); ++j) {
            if (j) out << ',';
            out << format_value(p.dist(i, j));
        }
        out << '\n';
    }
}

// --- correspondence: lines "i j" --------------------------------------------

inline Correspondence read_correspondence(std::istream& in, int size_p, int size_q) {
    std::vector<std::pair<int, int>> pairs;
    std::string line;
    while (std::getline(in, line)) {
        auto toks = detail::split_ws(detail::strip_comment(line));
        if (toks.empty()) continue;
        if (toks.size() != 2) throw parse_error("correspondence line needs two indices: " + line);
        pairs.emplace_back(std::stoi(toks[0]), std::stoi(toks[1]));
    }
    return Correspondence::create(std::move(pairs), size_p, size_q);
}

inline void write_correspondence(std::ostream& out, const Correspondence& c) {
    for (auto [i, j] : c.pairs()) out << i << ' ' << j << '\n';
}

// --- filtered complex: lines "value v1 v2 ... vk" ----------------------------

inline FilteredComplex read_filtered_complex(std::istream& in) {
    std::vector<std::pair<Simplex, double>> entries;
    std::string line;
    while (std::getline(in, line)) {
        auto toks = detail::split_ws(detail::strip_comment(line));
        if (toks.empty()) continue;
        if (toks.size() < 2) throw parse_error("complex line needs a value and vertices: " + line);
        double value = parse_value(toks[0]);
        Simplex verts;
        for (std::size_t i = 1; i < toks.size(); ++i) verts.push_back(std::stoi(toks[i]));
        entries.emplace_back(std::move(verts), value);
    }
    return FilteredComplex::from_simplices(std::move(entries));
}

inline void write_filtered_complex(std::ostream& out, const FilteredComplex& x,
                                   double scale = 1.0) {
    std::vector<int> order(x.size());
    for (int i = 0; i < x.size(); ++i) order[i] = i;
    const auto& ss = x.simplices();
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (ss[a].value != ss[b].value) return ss[a].value < ss[b].value;
        if (ss[a].verts.size() != ss[b].verts.size()) return ss[a].verts.size() < ss[b].verts.size();
        return ss[a].verts < ss[b].verts;
    });
    for (int i : order) {
        out << format_value(ss[i].value * scale);
        for (int v : ss[i].verts) out << ' ' << v;
        out << '\n';
    }
}

// --- barcode: lines "k b d", ordered by (degree, birth, death) ---------------

inline Barcode read_barcode(std::istream& in) {
    Barcode bc;
    std::string line;
    while (std::getline(in, line)) {
        auto toks = detail::split_ws(detail::strip_comment(line));
        if (toks.empty()) continue;
        if (toks.size() != 3) throw parse_error("barcode line needs \"k b d\": " + line);
        bc.add(std::stoi(toks[0]), {parse_value(toks[1]), parse_value(toks[2])});
    }
    return bc;
}

inline void write_barcode(std::ostream& out, const Barcode& bc, double scale = 1.0) {
    for (int k : bc.degrees())
        for (const auto& iv : bc.degree(k))
            out << k << ' ' << format_value(iv.birth * scale) << ' '
                << format_value(iv.death * scale) << '\n';
}

// --- grid module: "p m", grid line, dims line, m-1 row-major blocks ----------

inline GridModule read_grid_module(std::istream& in) {
    std::vector<std::string> toks;
    std::string line;
    while (std::getline(in, line)) {
        auto more = detail::split_ws(detail::strip_comment(line));
        toks.insert(toks.end(), more.begin(), more.end());
    }
    std::size_t pos = 0;
    auto next = [&]() -> const std::string& {
        if (pos >= toks.size()) throw parse_error("grid module file truncated");
        return toks[pos++];
    };
    std::uint32_t p = static_cast<std::uint32_t>(std::stoul(next()));
    int m = std::stoi(next());
    std::vector<double> grid(m);
    for (int i = 0; i < m; ++i) grid[i] = parse_value(next());
    std::vector<int> dims(m);
    for (int i = 0; i < m; ++i) dims[i] = std::stoi(next());
    PrimeField field(p);
    std::vector<FpMat> maps;
    for (int i = 0; i + 1 < m; ++i) {
        FpMat mat(dims[i + 1], dims[i], field);
        for (int r = 0; r < dims[i + 1]; ++r)
            for (int c = 0; c < dims[i]; ++c)
                mat.at(r, c) = field.reduce(std::stoll(next()));
        maps.push_back(std::move(mat));
    }
    if (pos != toks.size()) throw parse_error("trailing tokens in grid module file");
    return GridModule::create(std::move(grid), std::move(dims), std::move(maps), p);
}

inline void write_grid_module(std::ostream& out, const GridModule& m) {
    out << m.p() << ' ' << m.grid().size() << '\n';
    for (std::size_t i = 0; i < m.grid().size(); ++i)
        out << (i ? " " : "") << format_value(m.grid()[i]);
    out << '\n';
    for (std::size_t i = 0; i < m.dims().size(); ++i) out << (i ? " " : "") << m.dims()[i];
    out << '\n';
    for (const auto& map : m.maps()) {
        for (int r = 0; r < map.rows(); ++r) {
            for (int c = 0; c < map.cols(); ++c) out << (c ? " " : "") << map.at(r, c);
            out << '\n';
        }
    }
}

// --- small file helpers ------------------------------------------------------

template <typename T, typename Reader>
T read_file(const std::string& path, Reader reader) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open " + path);
    return reader(in);
}

inline std::string slurp(std::istream& in) {
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

}  // namespace hil
