#include "cvnl/io.hpp"

#include <fstream>

namespace cvnl::io {

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2)
        throw IoError("complex value must be a 2-element [re, im] array");
    return {j[0].get<double>(), j[1].get<double>()};
}

Json dataset_to_json(const Dataset& data) {
    Json j;
    j["d"] = data.d();
    j["n"] = data.n();
    Json cols = Json::array();
    for (Index i = 0; i < data.n(); ++i) {
        Json col = Json::array();
        for (Index r = 0; r < data.d(); ++r) col.push_back(complex_to_json(data.x(r, i)));
        cols.push_back(col);
    }
    j["X"] = cols;
    Json y = Json::array();
    for (Index i = 0; i < data.n(); ++i) y.push_back(complex_to_json(data.y(i)));
    j["y"] = y;
    return j;
}

Dataset dataset_from_json(const Json& j) {
    try {
        Index d = j.at("d").get<Index>();
        Index n = j.at("n").get<Index>();
        const Json& cols = j.at("X");
        const Json& yj = j.at("y");
        if (static_cast<Index>(cols.size()) != n || static_cast<Index>(yj.size()) != n)
            throw IoError("dataset: X/y lengths disagree with n");
        CMatrix x(d, n);
        for (Index i = 0; i < n; ++i) {
            if (static_cast<Index>(cols[i].size()) != d)
                throw IoError("dataset: column length disagrees with d");
            for (Index r = 0; r < d; ++r) x(r, i) = complex_from_json(cols[i][r]);
        }
        CVector y(n);
        for (Index i = 0; i < n; ++i) y(i) = complex_from_json(yj[i]);
        return Dataset(std::move(x), std::move(y));
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("dataset: ") + e.what());
    }
}

Json quadnet_to_json(const QuadNet& net) {
    Json j;
    j["k"] = net.k();
    j["d"] = net.d();
    Json rows = Json::array();
    for (Index r = 0; r < net.k(); ++r) {
        Json row = Json::array();
        for (Index c = 0; c < net.d(); ++c) row.push_back(complex_to_json(net.w(r, c)));
        rows.push_back(row);
    }
    j["W"] = rows;
    Json v = Json::array();
    for (Index i = 0; i < net.k(); ++i) v.push_back(complex_to_json(net.v(i)));
    j["v"] = v;
    return j;
}

QuadNet quadnet_from_json(const Json& j) {
    try {
        Index k = j.at("k").get<Index>();
        Index d = j.at("d").get<Index>();
        const Json& rows = j.at("W");
        const Json& vj = j.at("v");
        if (static_cast<Index>(rows.size()) != k || static_cast<Index>(vj.size()) != k)
            throw IoError("weights: W/v lengths disagree with k");
        CMatrix w(k, d);
        for (Index r = 0; r < k; ++r) {
            if (static_cast<Index>(rows[r].size()) != d)
                throw IoError("weights: row length disagrees with d");
            for (Index c = 0; c < d; ++c) w(r, c) = complex_from_json(rows[r][c]);
        }
        CVector v(k);
        for (Index i = 0; i < k; ++i) v(i) = complex_from_json(vj[i]);
        return QuadNet(std::move(w), std::move(v));
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("weights: ") + e.what());
    }
}

Json crelu_to_json(const crelu::CReluNet& net) {
    Json j;
    j["k"] = net.k();
    j["d"] = net.d();
    Json rows = Json::array();
    for (Index r = 0; r < net.k(); ++r) {
        Json row = Json::array();
        for (Index c = 0; c < net.d(); ++c) row.push_back(complex_to_json(net.w1(r, c)));
        rows.push_back(row);
    }
    j["W"] = rows;
    Json v = Json::array();
    for (Index i = 0; i < net.k(); ++i) v.push_back(complex_to_json(net.w2(i)));
    j["v"] = v;
    Json b1 = Json::array();
    for (Index i = 0; i < net.k(); ++i) b1.push_back(complex_to_json(net.b1(i)));
    j["b1"] = b1;
    j["b2"] = complex_to_json(net.b2);
    j["s_plus"] = net.act.s_plus;
    j["s_minus"] = net.act.s_minus;
    return j;
}

crelu::CReluNet crelu_from_json(const Json& j) {
    // v entries of a CReLU net may be zero, so this does not reuse the
    // QuadNet parser
    try {
        Index k = j.at("k").get<Index>();
        Index d = j.at("d").get<Index>();
        const Json& rows = j.at("W");
        CMatrix w1(k, d);
        for (Index r = 0; r < k; ++r)
            for (Index c = 0; c < d; ++c) w1(r, c) = complex_from_json(rows[r][c]);
        const Json& vj = j.at("v");
        CVector w2(k);
        for (Index i = 0; i < k; ++i) w2(i) = complex_from_json(vj[i]);
        const Json& b1j = j.at("b1");
        CVector b1(k);
        for (Index i = 0; i < k; ++i) b1(i) = complex_from_json(b1j[i]);
        Complex b2 = complex_from_json(j.at("b2"));
        crelu::PiecewiseActivation act(j.at("s_plus").get<double>(),
                                       j.at("s_minus").get<double>());
        return crelu::CReluNet(std::move(w1), std::move(b1), std::move(w2), b2, act);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("crelu weights: ") + e.what());
    }
}

Json load_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open " + path);
    Json j;
    try {
        f >> j;
    } catch (const nlohmann::json::exception& e) {
        throw IoError(path + ": " + e.what());
    }
    return j;
}

void save_json_file(const Json& j, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path + " for writing");
    f << j.dump(2) << '\n';
    if (!f) throw IoError("write failed for " + path);
}

Dataset load_dataset(const std::string& path) { return dataset_from_json(load_json_file(path)); }

QuadNet load_quadnet(const std::string& path) { return quadnet_from_json(load_json_file(path)); }

} // namespace cvnl::io
