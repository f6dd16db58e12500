#include "fracsym/report.hpp"

#include <cstdio>

namespace fracsym {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

Json Json::str(std::string s) {
    Json j;
    j.kind_ = Kind::String;
    j.s_ = std::move(s);
    return j;
}

Json Json::number(double v) {
    Json j;
    j.kind_ = Kind::Double;
    j.d_ = v;
    return j;
}

Json Json::integer(std::int64_t v) {
    Json j;
    j.kind_ = Kind::Int;
    j.i_ = v;
    return j;
}

Json Json::boolean(bool b) {
    Json j;
    j.kind_ = Kind::Bool;
    j.b_ = b;
    return j;
}

Json& Json::set(const std::string& key, Json v) {
    obj_[key] = std::move(v);
    return *this;
}

Json& Json::push(Json v) {
    arr_.push_back(std::move(v));
    return *this;
}

namespace {

void escape_to(const std::string& s, std::string& out) {
    out += '"';
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
                    out += c;
                }
        }
    }
    out += '"';
}

void newline_indent(std::string& out, int indent, int depth) {
    if (indent <= 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent) * depth, ' ');
}

}  // namespace

void Json::dump_to(std::string& out, int indent, int depth) const {
    switch (kind_) {
        case Kind::Null: out += "null"; break;
        case Kind::Bool: out += b_ ? "true" : "false"; break;
        case Kind::Int: out += std::to_string(i_); break;
        case Kind::Double: out += fmt17(d_); break;
        case Kind::String: escape_to(s_, out); break;
        case Kind::Array: {
            if (arr_.empty()) { out += "[]"; break; }
            out += '[';
            for (std::size_t i = 0; i < arr_.size(); ++i) {
                if (i) out += ',';
                newline_indent(out, indent, depth + 1);
                arr_[i].dump_to(out, indent, depth + 1);
            }
            newline_indent(out, indent, depth);
            out += ']';
            break;
        }
        case Kind::Object: {
            if (obj_.empty()) { out += "{}"; break; }
            out += '{';
            bool first = true;
            for (const auto& [k, v] : obj_) {  // std::map: keys already sorted
                if (!first) out += ',';
                first = false;
                newline_indent(out, indent, depth + 1);
                escape_to(k, out);
                out += indent > 0 ? ": " : ":";
                v.dump_to(out, indent, depth + 1);
            }
            newline_indent(out, indent, depth);
            out += '}';
            break;
        }
    }
}

std::string Json::dump(int indent) const {
    std::string out;
    dump_to(out, indent, 0);
    return out;
}

}  // namespace fracsym
