#include "varrob/lp.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace varrob {

int LinearProgram::add_var(std::string name, double lb, double ub, double obj) {
    Var v;
    v.name = std::move(name);
    v.lb = lb;
    v.ub = ub;
    v.obj = obj;
    vars.push_back(std::move(v));
    return static_cast<int>(vars.size()) - 1;
}

void LinearProgram::add_row(std::string name, std::vector<std::pair<int, double>> coeffs,
                            char rsense, double rhs) {
    Row r;
    r.name = std::move(name);
    r.coeffs = std::move(coeffs);
    r.sense = rsense;
    r.rhs = rhs;
    rows.push_back(std::move(r));
}

void LinearProgram::validate() const {
    std::unordered_set<std::string> names;
    for (const auto& v : vars) {
        if (std::isnan(v.lb) || std::isnan(v.ub) || std::isnan(v.obj))
            throw Error("lp: NaN in variable data");
        if (v.lb > v.ub) throw Error("lp: variable '" + v.name + "' has lb > ub");
        if (!names.insert(v.name).second)
            throw Error("lp: duplicate variable name '" + v.name + "'");
    }
    names.clear();
    for (const auto& r : rows) {
        if (r.sense != 'L' && r.sense != 'E' && r.sense != 'G')
            throw Error("lp: bad row sense");
        if (std::isnan(r.rhs)) throw Error("lp: NaN rhs");
        for (auto [j, c] : r.coeffs) {
            if (j < 0 || j >= static_cast<int>(vars.size()))
                throw Error("lp: row coefficient index out of range");
            if (std::isnan(c) || std::isinf(c)) throw Error("lp: bad row coefficient");
        }
        if (!names.insert(r.name).second)
            throw Error("lp: duplicate row name '" + r.name + "'");
    }
}

void MilpModel::validate() const {
    lp.validate();
    for (int j : binaries) {
        if (j < 0 || j >= static_cast<int>(lp.vars.size()))
            throw Error("milp: binary index out of range");
        if (lp.vars[j].lb < -kTol || lp.vars[j].ub > 1.0 + kTol)
            throw Error("milp: binary variable '" + lp.vars[j].name +
                        "' must have bounds within [0,1]");
    }
}

namespace {

std::string num12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void append_wrapped(std::string& out, std::string& line, const std::string& piece) {
    if (line.size() + piece.size() > 230) {
        out += line;
        out += '\n';
        line = "   ";
    }
    line += piece;
}

std::string expr_text(const LinearProgram& lp,
                      const std::vector<std::pair<int, double>>& coeffs,
                      const std::string& label) {
    std::string out;
    std::string line = " " + label + ":";
    bool first = true;
    for (auto [j, c] : coeffs) {
        if (c == 0.0) continue;
        std::string piece;
        if (c < 0.0)
            piece = " - ";
        else
            piece = first ? " " : " + ";
        double mag = std::fabs(c);
        if (mag != 1.0) piece += num12(mag) + " ";
        piece += lp.vars[j].name;
        append_wrapped(out, line, piece);
        first = false;
    }
    out += line;
    out += '\n';
    return out;
}

} // namespace

std::string lp_file_text(const MilpModel& model) {
    model.validate();
    const LinearProgram& lp = model.lp;
    std::string out;
    out += lp.sense == LinearProgram::Sense::Max ? "Maximize\n" : "Minimize\n";
    std::vector<std::pair<int, double>> obj;
    for (int j = 0; j < static_cast<int>(lp.vars.size()); ++j)
        if (lp.vars[j].obj != 0.0) obj.push_back({j, lp.vars[j].obj});
    out += expr_text(lp, obj, "obj");
    out += "Subject To\n";
    for (const auto& r : lp.rows) {
        std::string body = expr_text(lp, r.coeffs, r.name);
        // Relation goes on the same (last) line.
        body.pop_back(); // trailing newline
        body += r.sense == 'L' ? " <= " : (r.sense == 'G' ? " >= " : " = ");
        body += num12(r.rhs);
        body += '\n';
        out += body;
    }
    out += "Bounds\n";
    for (const auto& v : lp.vars) {
        bool lb_inf = v.lb == -kInf;
        bool ub_inf = v.ub == kInf;
        if (lb_inf && ub_inf) {
            out += " " + v.name + " free\n";
        } else if (!lb_inf && !ub_inf && v.lb == v.ub) {
            out += " " + v.name + " = " + num12(v.lb) + "\n";
        } else {
            std::string lo = lb_inf ? "-inf" : num12(v.lb);
            std::string hi = ub_inf ? "+inf" : num12(v.ub);
            out += " " + lo + " <= " + v.name + " <= " + hi + "\n";
        }
    }
    if (!model.binaries.empty()) {
        out += "Binary\n";
        std::string line = "";
        for (int j : model.binaries) {
            if (line.empty())
                line = " " + lp.vars[j].name;
            else if (line.size() + lp.vars[j].name.size() + 1 > 230) {
                out += line + "\n";
                line = " " + lp.vars[j].name;
            } else {
                line += " " + lp.vars[j].name;
            }
        }
        if (!line.empty()) out += line + "\n";
    }
    out += "End\n";
    return out;
}

void export_lp_file(const MilpModel& model, const std::string& path) {
    std::ofstream f(path, std::ios::binary); // binary: keep LF endings everywhere
    if (!f) throw Error("export_lp_file: cannot open '" + path + "' for writing");
    f << lp_file_text(model);
    if (!f) throw Error("export_lp_file: write failed for '" + path + "'");
}

namespace {

struct Tokenizer {
    std::vector<std::string> tokens;
    std::size_t pos = 0;

    explicit Tokenizer(const std::string& text) {
        std::string cur;
        auto flush = [&]() {
            if (!cur.empty()) {
                tokens.push_back(cur);
                cur.clear();
            }
        };
        for (std::size_t i = 0; i < text.size(); ++i) {
            char c = text[i];
            if (c == '\\') { // comment to end of line
                flush();
                while (i < text.size() && text[i] != '\n') ++i;
                continue;
            }
            if (std::isspace(static_cast<unsigned char>(c))) {
                flush();
                continue;
            }
            if (c == ':' || c == '+') {
                flush();
                tokens.push_back(std::string(1, c));
                continue;
            }
            if (c == '<' || c == '>' || c == '=') {
                flush();
                std::string rel(1, c);
                if (i + 1 < text.size() && text[i + 1] == '=') {
                    rel += '=';
                    ++i;
                }
                tokens.push_back(rel);
                continue;
            }
            if (c == '-') {
                // Minus binds as an operator unless part of a leading
                // numeric literal like -inf handled below.
                flush();
                tokens.push_back("-");
                continue;
            }
            cur += c;
        }
        flush();
    }

    bool done() const { return pos >= tokens.size(); }
    const std::string& peek() const { return tokens[pos]; }
    std::string take() { return tokens[pos++]; }
};

bool is_number_token(const std::string& t) {
    if (t.empty()) return false;
    char c = t[0];
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.';
}

bool iequal(const std::string& a, const char* b) {
    std::size_t n = std::strlen(b);
    if (a.size() != n) return false;
    for (std::size_t i = 0; i < n; ++i)
        if (std::tolower(static_cast<unsigned char>(a[i])) != b[i]) return false;
    return true;
}

bool is_inf_token(const std::string& t) {
    return iequal(t, "inf") || iequal(t, "infinity");
}

bool is_section_start(const std::string& t) {
    return iequal(t, "subject") || iequal(t, "st") || iequal(t, "s.t.") ||
           iequal(t, "bounds") || iequal(t, "binary") || iequal(t, "binaries") ||
           iequal(t, "bin") || iequal(t, "end") || iequal(t, "minimize") ||
           iequal(t, "maximize") || iequal(t, "min") || iequal(t, "max") ||
           iequal(t, "general") || iequal(t, "generals");
}

} // namespace

MilpModel parse_lp_text(const std::string& text) {
    Tokenizer tz(text);
    MilpModel model;
    LinearProgram& lp = model.lp;
    std::unordered_map<std::string, int> var_index;
    std::unordered_set<std::string> bounded;

    auto var_of = [&](const std::string& name) {
        auto it = var_index.find(name);
        if (it != var_index.end()) return it->second;
        int idx = lp.add_var(name, 0.0, kInf, 0.0);
        var_index.emplace(name, idx);
        return idx;
    };

    // Expression parser: [sign] [coef] var ... ; stops at a relation or a
    // section keyword. Returns the accumulated terms.
    auto parse_expr = [&](std::vector<std::pair<int, double>>* terms) {
        while (!tz.done()) {
            const std::string& t = tz.peek();
            if (t == "<=" || t == ">=" || t == "=" || t == "<" || t == ">" ||
                is_section_start(t))
                return;
            double sign = 1.0;
            while (!tz.done() && (tz.peek() == "+" || tz.peek() == "-")) {
                if (tz.take() == "-") sign = -sign;
            }
            if (tz.done()) throw Error("lp parse: dangling sign");
            double coef = 1.0;
            if (is_number_token(tz.peek())) coef = std::stod(tz.take());
            if (tz.done() || is_number_token(tz.peek()))
                throw Error("lp parse: expected variable name");
            const std::string name = tz.take();
            if (is_section_start(name))
                throw Error("lp parse: unexpected keyword in expression");
            terms->push_back({var_of(name), sign * coef});
        }
    };

    if (tz.done()) throw Error("lp parse: empty file");
    {
        std::string head = tz.take();
        if (iequal(head, "maximize") || iequal(head, "max"))
            lp.sense = LinearProgram::Sense::Max;
        else if (iequal(head, "minimize") || iequal(head, "min"))
            lp.sense = LinearProgram::Sense::Min;
        else
            throw Error("lp parse: file must start with Minimize or Maximize");
    }
    // Objective: optional label, then expression.
    {
        std::vector<std::pair<int, double>> terms;
        if (!tz.done() && !is_section_start(tz.peek())) {
            std::string maybe_label = tz.take();
            if (!tz.done() && tz.peek() == ":") {
                tz.take();
            } else {
                // Not a label; re-interpret as the first expression token.
                tz.pos -= 1;
            }
            parse_expr(&terms);
        }
        for (auto [j, c] : terms) lp.vars[j].obj += c;
    }

    enum class Section { None, Rows, Bounds, Binary };
    Section section = Section::None;
    int row_counter = 0;

    while (!tz.done()) {
        std::string t = tz.peek();
        if (iequal(t, "subject")) {
            tz.take();
            if (!tz.done() && iequal(tz.peek(), "to")) tz.take();
            section = Section::Rows;
            continue;
        }
        if (iequal(t, "st") || iequal(t, "s.t.")) {
            tz.take();
            section = Section::Rows;
            continue;
        }
        if (iequal(t, "bounds")) {
            tz.take();
            section = Section::Bounds;
            continue;
        }
        if (iequal(t, "binary") || iequal(t, "binaries") || iequal(t, "bin")) {
            tz.take();
            section = Section::Binary;
            continue;
        }
        if (iequal(t, "end")) {
            tz.take();
            break;
        }
        switch (section) {
            case Section::Rows: {
                std::string name = "r" + std::to_string(row_counter++);
                if (!is_number_token(tz.peek()) && tz.peek() != "-" && tz.peek() != "+") {
                    std::string maybe = tz.take();
                    if (!tz.done() && tz.peek() == ":") {
                        tz.take();
                        name = maybe;
                    } else {
                        tz.pos -= 1;
                    }
                }
                std::vector<std::pair<int, double>> terms;
                parse_expr(&terms);
                if (tz.done()) throw Error("lp parse: row without relation");
                std::string rel = tz.take();
                char sense = rel == "<=" || rel == "<" ? 'L' : (rel == ">=" || rel == ">" ? 'G' : 'E');
                double sign = 1.0;
                while (!tz.done() && (tz.peek() == "+" || tz.peek() == "-"))
                    if (tz.take() == "-") sign = -sign;
                if (tz.done() || !is_number_token(tz.peek()))
                    throw Error("lp parse: row rhs must be numeric");
                double rhs = sign * std::stod(tz.take());
                lp.add_row(name, std::move(terms), sense, rhs);
                break;
            }
            case Section::Bounds: {
                // Forms: "name free" | "name = v" | "lo <= name <= hi"
                // where lo/hi may be +-inf.
                double sign = 1.0;
                bool leading_sign = false;
                while (!tz.done() && (tz.peek() == "+" || tz.peek() == "-")) {
                    if (tz.take() == "-") sign = -sign;
                    leading_sign = true;
                }
                std::string first = tz.take();
                if (!leading_sign && !is_number_token(first) && !is_inf_token(first)) {
                    int j = var_of(first);
                    bounded.insert(first);
                    if (tz.done()) throw Error("lp parse: truncated bound");
                    std::string nxt = tz.take();
                    if (iequal(nxt, "free")) {
                        lp.vars[j].lb = -kInf;
                        lp.vars[j].ub = kInf;
                    } else if (nxt == "=") {
                        double s2 = 1.0;
                        while (!tz.done() && (tz.peek() == "+" || tz.peek() == "-"))
                            if (tz.take() == "-") s2 = -s2;
                        double v = s2 * std::stod(tz.take());
                        lp.vars[j].lb = v;
                        lp.vars[j].ub = v;
                    } else if (nxt == "<=" || nxt == "<") {
                        double s2 = 1.0;
                        while (!tz.done() && (tz.peek() == "+" || tz.peek() == "-"))
                            if (tz.take() == "-") s2 = -s2;
                        std::string val = tz.take();
                        lp.vars[j].ub = is_inf_token(val) ? s2 * kInf : s2 * std::stod(val);
                    } else if (nxt == ">=" || nxt == ">") {
                        double s2 = 1.0;
                        while (!tz.done() && (tz.peek() == "+" || tz.peek() == "-"))
                            if (tz.take() == "-") s2 = -s2;
                        std::string val = tz.take();
                        lp.vars[j].lb = is_inf_token(val) ? s2 * -kInf : s2 * std::stod(val);
                    } else {
                        throw Error("lp parse: malformed bound line");
                    }
                    break;
                }
                // "lo <= name <= hi"
                double lo = is_inf_token(first) ? sign * kInf : sign * std::stod(first);
                if (tz.done() || (tz.peek() != "<=" && tz.peek() != "<"))
                    throw Error("lp parse: malformed range bound");
                tz.take();
                std::string name = tz.take();
                int j = var_of(name);
                bounded.insert(name);
                lp.vars[j].lb = lo;
                if (!tz.done() && (tz.peek() == "<=" || tz.peek() == "<")) {
                    tz.take();
                    double s2 = 1.0;
                    while (!tz.done() && (tz.peek() == "+" || tz.peek() == "-"))
                        if (tz.take() == "-") s2 = -s2;
                    std::string val = tz.take();
                    lp.vars[j].ub = is_inf_token(val) ? s2 * kInf : s2 * std::stod(val);
                }
                break;
            }
            case Section::Binary: {
                std::string name = tz.take();
                int j = var_of(name);
                model.binaries.push_back(j);
                if (!bounded.count(name)) {
                    lp.vars[j].lb = std::max(lp.vars[j].lb, 0.0);
                    lp.vars[j].ub = std::min(lp.vars[j].ub, 1.0);
                }
                break;
            }
            case Section::None:
                throw Error("lp parse: content outside any section: '" + t + "'");
        }
    }
    model.validate();
    return model;
}

MilpModel import_lp_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("import_lp_file: cannot open '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_lp_text(ss.str());
}

} // namespace varrob
