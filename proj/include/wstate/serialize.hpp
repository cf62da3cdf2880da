// serialize.hpp: JSON text form of model bundles and effective models (complex entries as [re, im])

#pragma once

#include "effective.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace wstate {

using json = nlohmann::ordered_json;

inline json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) r.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(std::move(r));
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

inline Matrix matrix_from_json(const json& j) {
    const auto r = j.at("rows").get<Eigen::Index>(), c = j.at("cols").get<Eigen::Index>();
    const json& e = j.at("entries");
    if (static_cast<Eigen::Index>(e.size()) != r) throw std::invalid_argument("matrix_from_json: row count mismatch");
    Matrix m(r, c);
    for (Eigen::Index i = 0; i < r; ++i) {
        const json& row = e.at(static_cast<std::size_t>(i));
        if (static_cast<Eigen::Index>(row.size()) != c) throw std::invalid_argument("matrix_from_json: column count mismatch");
        for (Eigen::Index k = 0; k < c; ++k) {
            const json& z = row.at(static_cast<std::size_t>(k));
            m(i, k) = cd(z.at(0).get<double>(), z.at(1).get<double>());
        }
    }
    return m;
}

inline json operators_to_json(const std::vector<TaggedOperator>& ops) {
    json arr = json::array();
    for (const auto& l : ops) arr.push_back({{"parent", l.parent}, {"part", l.part}, {"matrix", matrix_to_json(l.op)}});
    return arr;
}

inline std::vector<TaggedOperator> operators_from_json(const json& arr) {
    std::vector<TaggedOperator> v;
    for (const auto& e : arr)
        v.push_back({e.at("parent").get<std::string>(), e.at("part").get<std::string>(), matrix_from_json(e.at("matrix"))});
    return v;
}

inline json to_json(const EffectiveModel& m) {
    return {{"kind", "effective"}, {"H_eff", matrix_to_json(m.H_eff)}, {"L_eff", operators_to_json(m.L_eff)}};
}

inline EffectiveModel effective_from_json(const json& j) {
    if (j.at("kind") != "effective") throw std::invalid_argument("effective_from_json: not an effective model");
    return {matrix_from_json(j.at("H_eff")), operators_from_json(j.at("L_eff"))};
}

inline json to_json(const ModelBundle& m) {
    json labels = json::array();
    for (const auto& l : m.basis.labels()) labels.push_back(to_string(l));
    json drives = json::array();
    for (const auto& d : m.drives) drives.push_back({{"tag", d.tag}, {"W_plus", matrix_to_json(d.W_plus)}});
    return {{"kind", "bundle"},
            {"n", m.basis.n()},
            {"mode_count", m.basis.mode_count()},
            {"labels", std::move(labels)},
            {"H_g", matrix_to_json(m.H_g)},
            {"H_e", matrix_to_json(m.H_e)},
            {"W_plus", matrix_to_json(m.W_plus)},
            {"W_minus", matrix_to_json(m.W_minus)},
            {"drives", std::move(drives)},
            {"lindblads", operators_to_json(m.lindblads)},
            {"H_NH", matrix_to_json(h_nh(m))}};
}

inline ModelBundle bundle_from_json(const json& j) {
    if (j.at("kind") != "bundle") throw std::invalid_argument("bundle_from_json: not a model bundle");
    ModelBundle m{symmetric_basis(j.at("n").get<int>(), j.at("mode_count").get<int>()),
                  matrix_from_json(j.at("H_g")),
                  matrix_from_json(j.at("H_e")),
                  matrix_from_json(j.at("W_plus")),
                  matrix_from_json(j.at("W_minus")),
                  operators_from_json(j.at("lindblads")),
                  {}};
    for (const auto& d : j.at("drives")) m.drives.push_back({d.at("tag").get<std::string>(), matrix_from_json(d.at("W_plus"))});
    return m;
}

}  // namespace wstate
