#include "varrob/json_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace varrob {

using nlohmann::json;

namespace {

Vec vec_from(const json& j, const std::string& field) {
    if (!j.is_array()) throw Error("instance schema: '" + field + "' must be an array");
    Vec v;
    for (const auto& e : j) {
        if (!e.is_number()) throw Error("instance schema: '" + field + "' must be numeric");
        v.push_back(e.get<double>());
    }
    return v;
}

Mat mat_from(const json& j, const std::string& field) {
    if (!j.is_array() || j.empty())
        throw Error("shape schema: '" + field + "' must be a nonempty matrix");
    int rows = static_cast<int>(j.size());
    int cols = static_cast<int>(j[0].size());
    Mat m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        if (static_cast<int>(j[r].size()) != cols)
            throw Error("shape schema: ragged matrix in '" + field + "'");
        for (int c = 0; c < cols; ++c) m.at(r, c) = j[r][c].get<double>();
    }
    return m;
}

template <typename T>
T require(const json& j, const std::string& field) {
    if (!j.contains(field))
        throw Error("instance schema: missing field '" + field + "'");
    try {
        return j.at(field).get<T>();
    } catch (const json::exception&) {
        throw Error("instance schema: bad value for field '" + field + "'");
    }
}

} // namespace

Instance instance_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(std::string("instance schema: invalid JSON: ") + e.what());
    }
    auto kind = kind_from_name(require<std::string>(j, "kind"));
    int n = require<int>(j, "n");
    if (!j.contains("c_hat")) throw Error("instance schema: missing field 'c_hat'");
    Vec c_hat = vec_from(j.at("c_hat"), "c_hat");
    if (static_cast<int>(c_hat.size()) != n)
        throw Error("instance schema: 'c_hat' length differs from 'n'");

    Instance inst = [&] {
        switch (kind) {
            case Kind::ShortestPath: {
                int nodes = require<int>(j, "nodes");
                int s = require<int>(j, "s");
                int t = require<int>(j, "t");
                if (!j.contains("arcs"))
                    throw Error("instance schema: missing field 'arcs'");
                std::vector<Arc> arcs(n);
                std::vector<char> seen(n, 0);
                for (const auto& a : j.at("arcs")) {
                    if (!a.is_array() || a.size() != 3)
                        throw Error("instance schema: each arc must be [u,v,element_index]");
                    int u = a[0].get<int>(), v = a[1].get<int>(), e = a[2].get<int>();
                    if (e < 0 || e >= n)
                        throw Error("instance schema: arc element_index out of range");
                    if (seen[e]) throw Error("instance schema: duplicate arc element_index");
                    seen[e] = 1;
                    arcs[e] = {u, v};
                }
                for (char c : seen)
                    if (!c) throw Error("instance schema: arcs must cover 0..n-1");
                return Instance::shortest_path(nodes, std::move(arcs), s, t,
                                               std::move(c_hat));
            }
            case Kind::Assignment: {
                int p = require<int>(j, "p");
                if (p * p != n) throw Error("instance schema: n must equal p*p");
                return Instance::assignment(p, std::move(c_hat));
            }
            case Kind::Unconstrained:
                return Instance::unconstrained(std::move(c_hat));
        }
        throw Error("instance schema: bad kind");
    }();

    if (j.contains("A") || j.contains("b")) {
        if (!j.contains("A") || !j.contains("b"))
            throw Error("instance schema: 'A' and 'b' must appear together");
        Polyhedron poly;
        poly.integral_relaxation = j.value("integral_relaxation", false);
        Vec b = vec_from(j.at("b"), "b");
        const auto& a_rows = j.at("A");
        if (a_rows.size() != b.size())
            throw Error("instance schema: 'A' and 'b' row counts differ");
        for (std::size_t r = 0; r < a_rows.size(); ++r) {
            Vec row = vec_from(a_rows[r], "A");
            if (static_cast<int>(row.size()) != n)
                throw Error("instance schema: 'A' row length differs from 'n'");
            PolyRow pr;
            pr.sense = 'G';
            pr.rhs = b[r];
            for (int i = 0; i < n; ++i)
                if (row[i] != 0.0) pr.coeffs.push_back({i, row[i]});
            poly.rows.push_back(std::move(pr));
        }
        inst.set_polyhedron(std::move(poly));
    } else if (j.contains("integral_relaxation")) {
        if (!j.at("integral_relaxation").get<bool>()) {
            Polyhedron poly = inst.polyhedron();
            poly.integral_relaxation = false;
            inst.set_polyhedron(std::move(poly));
        }
    }
    return inst;
}

Instance load_instance(const std::string& path) {
    return instance_from_json(read_text_file(path));
}

std::string instance_to_json(const Instance& inst) {
    json j;
    j["kind"] = kind_name(inst.kind());
    j["n"] = inst.n();
    j["c_hat"] = inst.c_hat();
    if (inst.kind() == Kind::ShortestPath) {
        j["nodes"] = inst.num_nodes();
        j["s"] = inst.source();
        j["t"] = inst.sink();
        json arcs = json::array();
        for (int e = 0; e < inst.n(); ++e)
            arcs.push_back({inst.arcs()[e].from, inst.arcs()[e].to, e});
        j["arcs"] = std::move(arcs);
    } else if (inst.kind() == Kind::Assignment) {
        j["p"] = inst.p();
    }
    return j.dump(2) + "\n";
}

void save_instance(const Instance& inst, const std::string& path) {
    write_text_file(path, instance_to_json(inst));
}

Shape shape_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(std::string("shape schema: invalid JSON: ") + e.what());
    }
    auto kind = shape_kind_from_name(require<std::string>(j, "variant"));
    switch (kind) {
        case ShapeKind::ProportionalBox: return Shape::proportional_box();
        case ShapeKind::ConstantBox: return Shape::constant_box();
        case ShapeKind::ArbitraryBox:
            return Shape::arbitrary_box(vec_from(j.at("d"), "d"));
        case ShapeKind::InfinityBall:
            return Shape::infinity_ball(vec_from(j.at("d"), "d"));
        case ShapeKind::ManhattanBall:
            return Shape::manhattan_ball(vec_from(j.at("d"), "d"));
        case ShapeKind::EuclideanBall:
            return Shape::euclidean_ball(vec_from(j.at("d"), "d"));
        case ShapeKind::Ellipsoid:
            if (j.contains("L")) return ellipsoid_from_factors(mat_from(j.at("L"), "L"));
            return Shape::ellipsoid(mat_from(j.at("Q"), "Q"));
    }
    throw Error("shape schema: bad variant");
}

Shape load_shape(const std::string& path) { return shape_from_json(read_text_file(path)); }

std::string frontier_solutions_json(const Frontier& frontier) {
    json j = json::object();
    for (std::size_t i = 0; i < frontier.points.size(); ++i) {
        json x = json::array();
        for (auto b : frontier.points[i].solution.x) x.push_back(static_cast<int>(b));
        j["s" + std::to_string(i)] = std::move(x);
    }
    return j.dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open file '" + path + "' for writing");
    f << content;
    if (!f) throw Error("write failed for '" + path + "'");
}

} // namespace varrob
