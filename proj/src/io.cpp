// Copyright 2026-present the uqsd project
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "uqsd/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include <json.hpp>

namespace uqsd {

namespace {

using nlohmann::json;

std::string format_double(double d) {
    if (!std::isfinite(d)) {
        throw std::domain_error("refusing to emit non-finite number");
    }
    if (d == 0.0) {
        d = 0.0;  // normalize -0
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%#.12g", d);
    return buf;
}

void escape_string(std::string& out, const std::string& s) {
    out.push_back('"');
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out.push_back(c);
                }
        }
    }
    out.push_back('"');
}

void render_json_into(std::string& out, const JsonValue& v) {
    std::visit(
        [&out](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, std::nullptr_t>) {
                out += "null";
            } else if constexpr (std::is_same_v<T, bool>) {
                out += x ? "true" : "false";
            } else if constexpr (std::is_same_v<T, std::int64_t>) {
                out += std::to_string(x);
            } else if constexpr (std::is_same_v<T, double>) {
                out += format_double(x);
            } else if constexpr (std::is_same_v<T, std::string>) {
                escape_string(out, x);
            } else if constexpr (std::is_same_v<T, JsonValue::Array>) {
                out.push_back('[');
                for (std::size_t i = 0; i < x.size(); ++i) {
                    if (i > 0) out.push_back(',');
                    render_json_into(out, x[i]);
                }
                out.push_back(']');
            } else {
                out.push_back('{');
                for (std::size_t i = 0; i < x.size(); ++i) {
                    if (i > 0) out.push_back(',');
                    escape_string(out, x[i].first);
                    out.push_back(':');
                    render_json_into(out, x[i].second);
                }
                out.push_back('}');
            }
        },
        v.raw());
}

bool is_scalar(const JsonValue& v) {
    return !v.is_array() && !v.is_object();
}

void render_scalar(std::string& out, const JsonValue& v) {
    std::visit(
        [&out](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, std::nullptr_t>) {
                out += "null";
            } else if constexpr (std::is_same_v<T, bool>) {
                out += x ? "true" : "false";
            } else if constexpr (std::is_same_v<T, std::int64_t>) {
                out += std::to_string(x);
            } else if constexpr (std::is_same_v<T, double>) {
                out += format_double(x);
            } else if constexpr (std::is_same_v<T, std::string>) {
                out += x;
            } else {
                out += "...";
            }
        },
        v.raw());
}

void render_text_into(std::string& out, const JsonValue& v, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    if (v.is_object()) {
        for (const auto& [key, val] : v.as_object()) {
            if (is_scalar(val)) {
                out += pad + key + ": ";
                render_scalar(out, val);
                out.push_back('\n');
            } else if (val.is_array() &&
                       std::all_of(val.as_array().begin(), val.as_array().end(),
                                   is_scalar)) {
                out += pad + key + ": [";
                const auto& arr = val.as_array();
                for (std::size_t i = 0; i < arr.size(); ++i) {
                    if (i > 0) out += ", ";
                    render_scalar(out, arr[i]);
                }
                out += "]\n";
            } else {
                out += pad + key + ":\n";
                render_text_into(out, val, indent + 1);
            }
        }
    } else if (v.is_array()) {
        for (const auto& item : v.as_array()) {
            if (is_scalar(item)) {
                out += pad + "- ";
                render_scalar(out, item);
                out.push_back('\n');
            } else {
                out += pad + "-\n";
                render_text_into(out, item, indent + 1);
            }
        }
    } else {
        out += pad;
        render_scalar(out, v);
        out.push_back('\n');
    }
}

ComplexMatrix matrix_from_json(const json& j, std::size_t dim, const std::string& where) {
    if (!j.is_array() || j.size() != dim) {
        throw ParseError(where + ": expected " + std::to_string(dim) + " rows");
    }
    ComplexMatrix m(dim, dim);
    for (std::size_t r = 0; r < dim; ++r) {
        const json& row = j[r];
        if (!row.is_array() || row.size() != dim) {
            throw ParseError(where + " row " + std::to_string(r) + ": expected " +
                             std::to_string(dim) + " entries");
        }
        for (std::size_t c = 0; c < dim; ++c) {
            const json& e = row[c];
            if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
                throw ParseError(where + " entry (" + std::to_string(r) + "," +
                                 std::to_string(c) + "): expected [re, im]");
            }
            m(r, c) = cplx(e[0].get<double>(), e[1].get<double>());
        }
    }
    return m;
}

std::string violation_summary(const std::vector<Violation>& violations) {
    std::string msg = "instance validation failed:";
    for (const Violation& v : violations) {
        msg += " " + v.code;
        if (v.index != Violation::kGlobal) {
            msg += "[state " + std::to_string(v.index) + "]";
        }
        msg += "(residual " + format_double(v.residual) + ");";
    }
    return msg;
}

}  // namespace

JsonValue& JsonValue::set(const std::string& key, JsonValue v) {
    std::get<Object>(value_).emplace_back(key, std::move(v));
    return *this;
}

JsonValue& JsonValue::push(JsonValue v) {
    std::get<Array>(value_).push_back(std::move(v));
    return *this;
}

std::string render_json(const JsonValue& v) {
    std::string out;
    render_json_into(out, v);
    out.push_back('\n');
    return out;
}

std::string render_text(const JsonValue& v) {
    std::string out;
    render_text_into(out, v, 0);
    return out;
}

JsonValue matrix_to_json(const ComplexMatrix& m) {
    JsonValue rows = JsonValue::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        JsonValue row = JsonValue::array();
        for (std::size_t c = 0; c < m.cols(); ++c) {
            JsonValue entry = JsonValue::array();
            entry.push(m(r, c).real());
            entry.push(m(r, c).imag());
            row.push(std::move(entry));
        }
        rows.push(std::move(row));
    }
    return rows;
}

ParsedInput parse_instance(const std::string& text, const Tolerances& tol,
                           bool normalize_priors) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("json syntax: ") + e.what());
    }
    if (!j.is_object()) {
        throw ParseError("top level: expected an object");
    }
    if (!j.contains("dim") || !j["dim"].is_number_unsigned()) {
        throw ParseError("dim: expected a positive integer");
    }
    const std::size_t dim = j["dim"].get<std::size_t>();
    if (dim == 0) {
        throw ParseError("dim: must be positive");
    }
    if (!j.contains("states") || !j["states"].is_array()) {
        throw ParseError("states: expected an array");
    }

    std::vector<ComplexMatrix> matrices;
    std::vector<double> priors;
    const json& states = j["states"];
    for (std::size_t i = 0; i < states.size(); ++i) {
        const json& s = states[i];
        const std::string where = "states[" + std::to_string(i) + "]";
        if (!s.is_object()) {
            throw ParseError(where + ": expected an object");
        }
        if (!s.contains("prior") || !s["prior"].is_number()) {
            throw ParseError(where + ".prior: expected a number");
        }
        if (!s.contains("matrix")) {
            throw ParseError(where + ".matrix: missing");
        }
        priors.push_back(s["prior"].get<double>());
        matrices.push_back(matrix_from_json(s["matrix"], dim, where + ".matrix"));
    }

    ValidationResult vr = validate_instance(matrices, priors, tol, normalize_priors);
    if (!vr.ok()) {
        throw ValidationError(violation_summary(vr.violations), vr.violations);
    }

    ParsedInput out;
    if (!j.contains("sets")) {
        out.instance = std::move(*vr.instance);
        return out;
    }

    const json& sets = j["sets"];
    if (!sets.is_array() || sets.empty()) {
        throw ParseError("sets: expected a non-empty array of index lists");
    }
    SetInstance si;
    si.dim = dim;
    std::set<std::size_t> seen;
    for (std::size_t g = 0; g < sets.size(); ++g) {
        const json& group = sets[g];
        if (!group.is_array() || group.empty()) {
            throw ParseError("sets[" + std::to_string(g) + "]: expected a non-empty list");
        }
        std::vector<SetEntry> members;
        for (const json& idx : group) {
            if (!idx.is_number_unsigned()) {
                throw ParseError("sets[" + std::to_string(g) + "]: indices must be unsigned");
            }
            const std::size_t k = idx.get<std::size_t>();
            if (k >= vr.instance->num_states()) {
                throw ParseError("sets[" + std::to_string(g) + "]: index " +
                                 std::to_string(k) + " out of range");
            }
            if (!seen.insert(k).second) {
                throw ParseError("sets[" + std::to_string(g) + "]: index " +
                                 std::to_string(k) + " used twice");
            }
            members.push_back(
                {vr.instance->entries[k].prior, vr.instance->entries[k].state});
        }
        si.sets.push_back(std::move(members));
    }
    if (seen.size() != vr.instance->num_states()) {
        throw ParseError("sets: every state index must appear in exactly one set");
    }

    MergedSets merged = merge_sets(si);
    out.instance = std::move(merged.instance);
    out.sets = std::move(si);
    return out;
}

JsonValue instance_to_json(const DiscriminationInstance& instance) {
    JsonValue root = JsonValue::object();
    root.set("dim", instance.dim);
    JsonValue states = JsonValue::array();
    for (const InstanceEntry& e : instance.entries) {
        JsonValue s = JsonValue::object();
        s.set("prior", e.prior);
        s.set("matrix", matrix_to_json(e.state.matrix));
        states.push(std::move(s));
    }
    root.set("states", std::move(states));
    return root;
}

POVM parse_povm(const std::string& text, std::size_t expected_dim) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("json syntax: ") + e.what());
    }
    if (!j.is_object() || !j.contains("dim") || !j["dim"].is_number_unsigned()) {
        throw ParseError("povm: expected an object with dim");
    }
    const std::size_t dim = j["dim"].get<std::size_t>();
    if (expected_dim != 0 && dim != expected_dim) {
        throw ParseError("povm: dimension does not match the instance");
    }
    if (!j.contains("operators") || !j["operators"].is_array()) {
        throw ParseError("povm.operators: expected an array");
    }
    POVM p;
    const json& ops = j["operators"];
    for (std::size_t k = 0; k < ops.size(); ++k) {
        p.operators.push_back(
            matrix_from_json(ops[k], dim, "operators[" + std::to_string(k) + "]"));
    }
    return p;
}

JsonValue povm_to_json(const POVM& p) {
    JsonValue root = JsonValue::object();
    const std::size_t dim = p.operators.empty() ? 0 : p.operators.front().rows();
    root.set("dim", dim);
    JsonValue ops = JsonValue::array();
    for (const ComplexMatrix& op : p.operators) {
        ops.push(matrix_to_json(op));
    }
    root.set("operators", std::move(ops));
    return root;
}

}  // namespace uqsd
