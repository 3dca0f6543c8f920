#include "stochdual/json_io.hpp"

#include <cstdio>
#include <fstream>

namespace stochdual {

namespace {

std::vector<std::string> labels_from(const json& j, const char* key) {
    return j.at(key).get<std::vector<std::string>>();
}

json real_matrix_to_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXd real_matrix_from_json(const json& j) {
    const auto rows = j.get<std::vector<std::vector<double>>>();
    if (rows.empty()) throw DimensionMismatch("matrix JSON: no rows");
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != rows.front().size()) {
            throw DimensionMismatch("matrix JSON: ragged rows");
        }
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
        }
    }
    return m;
}

}  // namespace

json to_json(const ProbDist& p) {
    std::vector<double> weights(p.weights().data(), p.weights().data() + p.weights().size());
    return json{{"space", p.space().labels()}, {"weights", weights}};
}

ProbDist prob_dist_from_json(const json& j) {
    FiniteSpace space(labels_from(j, "space"));
    const auto weights = j.at("weights").get<std::vector<double>>();
    Eigen::VectorXd w(static_cast<Eigen::Index>(weights.size()));
    for (std::size_t i = 0; i < weights.size(); ++i) w(static_cast<Eigen::Index>(i)) = weights[i];
    return ProbDist(std::move(space), std::move(w));
}

json to_json(const StochMatrix& f) {
    return json{{"domain", f.domain().labels()},
                {"codomain", f.codomain().labels()},
                {"entries", real_matrix_to_json(f.entries())}};
}

StochMatrix stoch_matrix_from_json(const json& j) {
    return StochMatrix(FiniteSpace(labels_from(j, "domain")),
                       FiniteSpace(labels_from(j, "codomain")),
                       real_matrix_from_json(j.at("entries")));
}

json to_json(const DiagMap& phi) {
    return json{{"domain", phi.domain_space().labels()},
                {"codomain", phi.codomain_space().labels()},
                {"matrix_re", real_matrix_to_json(phi.matrix().real())},
                {"matrix_im", real_matrix_to_json(phi.matrix().imag())}};
}

DiagMap diag_map_from_json(const json& j) {
    const Eigen::MatrixXd re = real_matrix_from_json(j.at("matrix_re"));
    const Eigen::MatrixXd im = real_matrix_from_json(j.at("matrix_im"));
    if (re.rows() != im.rows() || re.cols() != im.cols()) {
        throw DimensionMismatch("DiagMap JSON: matrix_re and matrix_im shapes differ");
    }
    Eigen::MatrixXcd m = re.cast<std::complex<double>>();
    m.imag() = im;
    return DiagMap(FiniteSpace(labels_from(j, "domain")),
                   FiniteSpace(labels_from(j, "codomain")), std::move(m));
}

json to_json(const CMatrix& m) {
    return json{{"re", real_matrix_to_json(m.real())}, {"im", real_matrix_to_json(m.imag())}};
}

CMatrix cmatrix_from_json(const json& j) {
    const Eigen::MatrixXd re = real_matrix_from_json(j.at("re"));
    const Eigen::MatrixXd im = real_matrix_from_json(j.at("im"));
    if (re.rows() != im.rows() || re.cols() != im.cols()) {
        throw DimensionMismatch("complex matrix JSON: re and im shapes differ");
    }
    CMatrix m = re.cast<std::complex<double>>();
    m.imag() = im;
    return m;
}

json to_json(const KrausChannel& k) {
    json ops = json::array();
    for (const auto& op : k.operators()) ops.push_back(to_json(op));
    return json{{"operators", std::move(ops)}};
}

KrausChannel kraus_channel_from_json(const json& j) {
    std::vector<CMatrix> ops;
    for (const auto& op : j.at("operators")) ops.push_back(cmatrix_from_json(op));
    return KrausChannel(std::move(ops));
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    return json::parse(in);
}

void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    out << j.dump(2) << '\n';
}

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace stochdual
