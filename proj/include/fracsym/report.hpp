#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace fracsym {

/// Fixed-format double for reports: 17 significant digits.
std::string fmt17(double v);

/// Minimal JSON value for deterministic reports: object keys are emitted
/// sorted and doubles always print with 17 significant digits, so equal
/// inputs produce byte-identical files.
class Json {
public:
    Json() : kind_(Kind::Null) {}

    static Json object() { Json j; j.kind_ = Kind::Object; return j; }
    static Json array() { Json j; j.kind_ = Kind::Array; return j; }
    static Json str(std::string s);
    static Json number(double v);
    static Json integer(std::int64_t v);
    static Json boolean(bool b);

    Json& set(const std::string& key, Json v);
    Json& push(Json v);

    std::string dump(int indent = 0) const;

private:
    enum class Kind { Null, Bool, Int, Double, String, Array, Object };
    Kind kind_;
    bool b_ = false;
    std::int64_t i_ = 0;
    double d_ = 0.0;
    std::string s_;
    std::vector<Json> arr_;
    std::map<std::string, Json> obj_;

    void dump_to(std::string& out, int indent, int depth) const;
};

}  // namespace fracsym
