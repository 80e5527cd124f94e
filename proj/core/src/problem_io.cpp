#include "pdmeans/problem_io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace pdmeans {

namespace {

using nlohmann::ordered_json;

constexpr const char* kProblemSchema = "pdmeans-problem/1";

double number_from(const ordered_json& j, const std::string& where) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) return parse_number(j.get<std::string>());
    throw Error("problem file: " + where + " is not a number");
}

}  // namespace

std::string format_sig17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_number(const std::string& s) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || (end && *end != '\0'))
        throw Error("parse_number: invalid number '" + s + "'");
    return v;
}

std::string digest_hex(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char ch : bytes) {
        h ^= static_cast<unsigned char>(ch);
        h *= 0x100000001b3ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_atomic(const std::string& path, const std::string& text) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open file for writing: " + tmp);
        out << text;
        out.flush();
        if (!out) throw Error("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw Error("atomic rename failed: " + path + " (" + std::strerror(errno) + ")");
    }
}

ProblemFile parse_problem_text(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw Error(std::string("problem file: JSON parse error: ") + e.what());
    }
    if (!doc.is_object() || doc.value("schema", "") != kProblemSchema)
        throw Error(std::string("problem file: missing or unsupported schema (expected ") +
                    kProblemSchema + ")");
    if (!doc.contains("n") || !doc.contains("m") || !doc.contains("weights") ||
        !doc.contains("matrices"))
        throw Error("problem file: required fields are n, m, weights, matrices");

    const auto n = doc["n"].get<std::size_t>();
    const auto m = doc["m"].get<std::size_t>();
    if (n < 1) throw Error("problem file: n must be >= 1");
    if (m < 1) throw Error("problem file: m must be >= 1");

    const auto& jw = doc["weights"];
    if (!jw.is_array() || jw.size() != m)
        throw Error("problem file: weights must be an array of length m");
    std::vector<double> weights(m);
    double wsum = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        weights[i] = number_from(jw[i], "weights[" + std::to_string(i) + "]");
        if (!(weights[i] > 0.0))
            throw Error("problem file: weight " + std::to_string(i) + " must be positive");
        wsum += weights[i];
    }

    ProblemFile out{MeanProblem(WeightVector::uniform(1), {SPDMatrix::identity(1)}), {}, {}};
    if (std::fabs(wsum - 1.0) > 1e-8) {
        std::ostringstream msg;
        msg << "problem file: weights sum to " << format_sig17(wsum)
            << ", more than 1e-8 away from 1";
        throw Error(msg.str());
    }
    if (wsum != 1.0) {
        std::ostringstream msg;
        msg << "weights summed to " << format_sig17(wsum) << "; renormalized";
        out.warnings.push_back(msg.str());
    }

    const auto& jm = doc["matrices"];
    if (!jm.is_array() || jm.size() != m)
        throw Error("problem file: matrices must be an array of length m");
    std::vector<SPDMatrix> matrices;
    matrices.reserve(m);
    for (std::size_t k = 0; k < m; ++k) {
        const auto& entries = jm[k];
        if (!entries.is_array() || entries.size() != n * n)
            throw Error("problem file: matrix " + std::to_string(k) + " must have n*n entries");
        Matrix a(n, n);
        for (std::size_t idx = 0; idx < n * n; ++idx)
            a(idx / n, idx % n) = number_from(
                entries[idx], "matrices[" + std::to_string(k) + "][" + std::to_string(idx) + "]");
        double scale = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::fabs(a(i, j)));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                if (std::fabs(a(i, j) - a(j, i)) > 1e-12 * std::max(scale, 1.0)) {
                    std::ostringstream msg;
                    msg << "problem file: matrix " << k << ": symmetry violation at (" << i
                        << "," << j << ")";
                    throw Error(msg.str());
                }
            }
        }
        try {
            matrices.emplace_back(SymMatrix(a));
        } catch (const NotPositiveDefiniteError& e) {
            std::ostringstream msg;
            msg << "problem file: matrix " << k << " not positive definite ("
                << e.what() << ")";
            throw Error(msg.str());
        }
    }

    out.problem = MeanProblem(WeightVector(std::move(weights)), std::move(matrices));
    if (doc.contains("labels")) {
        const auto& jl = doc["labels"];
        if (!jl.is_array() || jl.size() != m)
            throw Error("problem file: labels must be an array of length m");
        for (const auto& l : jl) out.labels.push_back(l.get<std::string>());
    }
    return out;
}

ProblemFile parse_problem(const std::string& path) {
    return parse_problem_text(read_text(path));
}

std::string problem_to_json(const MeanProblem& p, const std::vector<std::string>& labels) {
    ordered_json doc;
    doc["schema"] = kProblemSchema;
    doc["n"] = p.dim();
    doc["m"] = p.size();
    ordered_json jw = ordered_json::array();
    for (std::size_t i = 0; i < p.size(); ++i) jw.push_back(format_sig17(p.weight(i)));
    doc["weights"] = std::move(jw);
    ordered_json jm = ordered_json::array();
    for (std::size_t k = 0; k < p.size(); ++k) {
        ordered_json entries = ordered_json::array();
        const auto& a = p.matrix(k).sym();
        for (std::size_t i = 0; i < p.dim(); ++i)
            for (std::size_t j = 0; j < p.dim(); ++j) entries.push_back(format_sig17(a(i, j)));
        jm.push_back(std::move(entries));
    }
    doc["matrices"] = std::move(jm);
    if (!labels.empty()) doc["labels"] = labels;
    return doc.dump(2) + "\n";
}

void write_problem(const std::string& path, const MeanProblem& p,
                   const std::vector<std::string>& labels) {
    write_text_atomic(path, problem_to_json(p, labels));
}

}  // namespace pdmeans
