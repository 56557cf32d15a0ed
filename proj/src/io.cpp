#include "noninfo/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace noninfo
{

namespace
{

std::string format_double(double v)
{
    if (!std::isfinite(v))
        return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    std::string s(buf);
    if (s.find_first_of(".eE") == std::string::npos)
        s += ".0";
    return s;
}

void emit(const nlohmann::json& j, int indent, int depth, std::string& out)
{
    const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
    const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
    const char* nl = indent > 0 ? "\n" : "";
    switch (j.type())
    {
    case nlohmann::json::value_t::number_float:
        out += format_double(j.get<double>());
        return;
    case nlohmann::json::value_t::array: {
        if (j.empty())
        {
            out += "[]";
            return;
        }
        out += "[";
        out += nl;
        bool first = true;
        for (const auto& e : j)
        {
            if (!first)
            {
                out += ",";
                out += nl;
            }
            first = false;
            out += pad;
            emit(e, indent, depth + 1, out);
        }
        out += nl;
        out += close_pad + "]";
        return;
    }
    case nlohmann::json::value_t::object: {
        if (j.empty())
        {
            out += "{}";
            return;
        }
        out += "{";
        out += nl;
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it)
        {
            if (!first)
            {
                out += ",";
                out += nl;
            }
            first = false;
            out += pad + nlohmann::json(it.key()).dump() + (indent > 0 ? ": " : ":");
            emit(it.value(), indent, depth + 1, out);
        }
        out += nl;
        out += close_pad + "}";
        return;
    }
    default:
        out += j.dump();
    }
}

} // namespace

std::string dump_json17(const nlohmann::json& j, int indent)
{
    std::string out;
    emit(j, std::max(indent, 0), 0, out);
    out += "\n";
    return out;
}

void write_text_file(const std::string& path, const std::string& text)
{
    const std::filesystem::path p(path);
    if (p.has_parent_path())
        std::filesystem::create_directories(p.parent_path());
    std::ofstream os(p, std::ios::binary);
    if (!os)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    os << text;
    if (!os)
        throw std::runtime_error("write to '" + path + "' failed");
}

std::string read_text_file(const std::string& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

} // namespace noninfo
