#include "jacmax/json_io.hpp"

#include "jacmax/errors.hpp"

#include <fstream>
#include <sstream>

namespace jacmax {

Json bigint_to_json(const BigInt& n) { return n.get_str(); }

BigInt bigint_from_json(const Json& j, const std::string& where)
{
    if (j.is_number_integer())
        return BigInt(j.dump());
    if (!j.is_string())
        throw FormatError(where + ": expected a decimal string or integer");
    const std::string s = j.get<std::string>();
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (start == s.size())
        throw FormatError(where + ": empty integer");
    for (std::size_t i = start; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9')
            throw FormatError(where + ": not a decimal integer: \"" + s + "\"");
    return BigInt(s[0] == '+' ? s.substr(1) : s);
}

Json poly_to_json(const IntPoly& f, const std::string& var)
{
    Json c = Json::array();
    for (const auto& a : f.coeffs())
        c.push_back(a.get_str());
    return Json{{"var", var}, {"coeffs", std::move(c)}};
}

IntPoly poly_from_json(const Json& j, const std::string& where)
{
    if (!j.is_object())
        throw FormatError(where + ": expected an object with \"coeffs\"");
    if (j.contains("var") && !j.at("var").is_string())
        throw FormatError(where + ".var: expected a string");
    if (!j.contains("coeffs") || !j.at("coeffs").is_array())
        throw FormatError(where + ".coeffs: expected an array");
    std::vector<BigInt> c;
    std::size_t k = 0;
    for (const auto& v : j.at("coeffs"))
        c.push_back(bigint_from_json(v, where + ".coeffs[" + std::to_string(k++) + "]"));
    return IntPoly(std::move(c));
}

Json parse_json(const std::string& text, const std::string& source)
{
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw FormatError(source + ": " + e.what(), e.byte);
    }
}

Json read_json_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_json(ss.str(), path);
}

} // namespace jacmax
