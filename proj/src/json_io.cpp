#include "wth/json_io.hpp"

#include <cctype>
#include <fstream>

namespace wth {

namespace {

bool is_integer_text(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

exact_arith::number parse_rational(const std::string& text) {
    using boost::multiprecision::cpp_int;
    auto slash = text.find('/');
    if (slash == std::string::npos) {
        if (!is_integer_text(text)) throw input_error("bad rational '" + text + "'");
        return exact_arith::number(cpp_int(text));
    }
    std::string num = text.substr(0, slash);
    std::string den = text.substr(slash + 1);
    if (!is_integer_text(num) || !is_integer_text(den))
        throw input_error("bad rational '" + text + "'");
    cpp_int q(den);
    if (q == 0) throw input_error("zero denominator in '" + text + "'");
    return exact_arith::number(cpp_int(num), q);
}

parsed_weights parse_weights(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("weights"))
        throw input_error("expected an object with a \"weights\" key");
    const auto& rows = doc["weights"];
    if (!rows.is_array() || rows.size() != 3)
        throw input_error("\"weights\" must be a 3x3 array");

    bool has_decimal = false;
    bool has_rational_string = false;
    for (const auto& row : rows) {
        if (!row.is_array() || row.size() != 3)
            throw input_error("\"weights\" must be a 3x3 array");
        for (const auto& cell : row) {
            if (cell.is_number_float()) {
                has_decimal = true;
            } else if (cell.is_string() && cell.get<std::string>() != "inf") {
                has_rational_string = true;
            } else if (!cell.is_number_integer() && !cell.is_number_unsigned() &&
                       !cell.is_string()) {
                throw input_error("weight entries must be numbers, \"p/q\" strings, or \"inf\"");
            }
        }
    }
    if (has_decimal && has_rational_string)
        throw input_error("decimal and rational weights cannot be mixed in one matrix");

    parsed_weights out;
    out.mode = has_decimal ? weight_mode::floating : weight_mode::exact;
    for (int i = 1; i <= 3; ++i) {
        for (int j = 1; j <= 3; ++j) {
            if (i == j) continue;  // diagonal is forced to zero
            const auto& cell = rows[i - 1][j - 1];
            try {
                if (out.mode == weight_mode::exact) {
                    if (cell.is_string()) {
                        std::string s = cell.get<std::string>();
                        out.exact.set(peg(i), peg(j), s == "inf"
                                                          ? exact_cost::infinity()
                                                          : exact_cost(parse_rational(s)));
                    } else {
                        long long v = cell.get<long long>();
                        if (v < 0) throw input_error("negative weight");
                        out.exact.set(peg(i), peg(j), exact_cost(exact_arith::from_int(v)));
                    }
                } else {
                    if (cell.is_string()) {
                        // only "inf" reaches here
                        out.floating.set(peg(i), peg(j), float_cost::infinity());
                    } else {
                        double v = cell.get<double>();
                        if (v < 0) throw input_error("negative weight");
                        out.floating.set(peg(i), peg(j), float_cost(v));
                    }
                }
            } catch (const std::invalid_argument& e) {
                throw input_error("weight (" + std::to_string(i) + "," + std::to_string(j) +
                                  "): " + e.what());
            }
        }
    }
    return out;
}

parsed_weights load_weights(const std::string& text) {
    std::string body;
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        body = text;
    } else {
        std::ifstream in(text);
        if (!in) throw input_error("cannot open weights file '" + text + "'");
        body.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(body);
    } catch (const nlohmann::json::parse_error& e) {
        throw input_error(std::string("weights JSON parse error: ") + e.what());
    }
    return parse_weights(doc);
}

}  // namespace wth
