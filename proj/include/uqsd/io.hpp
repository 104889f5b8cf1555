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

#ifndef UQSD_IO_HPP
#define UQSD_IO_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "uqsd/model.hpp"
#include "uqsd/discriminate.hpp"

namespace uqsd {

inline constexpr const char* kReportVersion = "uqsd-1";

/// Order-preserving JSON tree used for everything the tool emits.
/// Doubles render with 12 significant digits; non-finite values are
/// refused at render time.
class JsonValue {
  public:
    using Array = std::vector<JsonValue>;
    using Object = std::vector<std::pair<std::string, JsonValue>>;

    JsonValue() : value_(nullptr) {}
    JsonValue(std::nullptr_t) : value_(nullptr) {}
    JsonValue(bool b) : value_(b) {}
    JsonValue(std::int64_t i) : value_(i) {}
    JsonValue(std::uint64_t u) : value_(static_cast<std::int64_t>(u)) {}
    JsonValue(int i) : value_(static_cast<std::int64_t>(i)) {}
    JsonValue(std::size_t s) : value_(static_cast<std::int64_t>(s)) {}
    JsonValue(double d) : value_(d) {}
    JsonValue(const char* s) : value_(std::string(s)) {}
    JsonValue(std::string s) : value_(std::move(s)) {}
    JsonValue(Array a) : value_(std::move(a)) {}
    JsonValue(Object o) : value_(std::move(o)) {}

    static JsonValue object() { return JsonValue(Object{}); }
    static JsonValue array() { return JsonValue(Array{}); }

    JsonValue& set(const std::string& key, JsonValue v);
    JsonValue& push(JsonValue v);

    bool is_object() const { return std::holds_alternative<Object>(value_); }
    bool is_array() const { return std::holds_alternative<Array>(value_); }
    const Object& as_object() const { return std::get<Object>(value_); }
    const Array& as_array() const { return std::get<Array>(value_); }

    const std::variant<std::nullptr_t, bool, std::int64_t, double, std::string, Array,
                       Object>&
    raw() const {
        return value_;
    }

  private:
    std::variant<std::nullptr_t, bool, std::int64_t, double, std::string, Array, Object>
        value_;
};

/// Stable-order JSON with "%#.12g" floats. Throws on NaN/Inf.
std::string render_json(const JsonValue& v);

/// Human-readable "key: value" rendering of the same tree.
std::string render_text(const JsonValue& v);

JsonValue matrix_to_json(const ComplexMatrix& m);

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct ValidationError : std::runtime_error {
    std::vector<Violation> violations;
    ValidationError(const std::string& what, std::vector<Violation> v)
        : std::runtime_error(what), violations(std::move(v)) {}
};

/// Either a plain instance or, when the file carries a "sets" grouping,
/// both views of it.
struct ParsedInput {
    DiscriminationInstance instance;
    std::optional<SetInstance> sets;
};

/// Parses and validates an instance file. Syntax errors and shape
/// errors raise ParseError with field context; semantic violations
/// raise ValidationError carrying the structured list.
ParsedInput parse_instance(const std::string& text, const Tolerances& tol = {},
                           bool normalize_priors = false);

JsonValue instance_to_json(const DiscriminationInstance& instance);

POVM parse_povm(const std::string& text, std::size_t expected_dim);
JsonValue povm_to_json(const POVM& p);

}  // namespace uqsd

#endif  // UQSD_IO_HPP
