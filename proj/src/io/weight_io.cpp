#include "apchar/weight_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "apchar/error.hpp"

namespace apchar::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::InvalidWeight, what); }

}  // namespace

GridWeight parse_weight_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        bad(std::string("malformed weight JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("dims") || !doc.contains("samples")) {
        bad("weight JSON needs \"dims\" and \"samples\"");
    }
    const auto& jd = doc["dims"];
    const auto& js = doc["samples"];
    if (!jd.is_array() || !js.is_array()) bad("\"dims\" and \"samples\" must be arrays");

    Dims dims;
    for (const auto& n : jd) {
        if (!n.is_number_unsigned() || n.get<std::uint64_t>() == 0) bad("dims must be positive integers");
        dims.push_back(n.get<std::size_t>());
    }
    std::vector<double> samples;
    samples.reserve(js.size());
    for (const auto& s : js) {
        if (!s.is_number()) bad("samples must be numbers");
        samples.push_back(s.get<double>());
    }
    return GridWeight(std::move(dims), std::move(samples));
}

GridWeight parse_weight_csv(std::string_view text) {
    std::vector<double> samples;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const std::size_t eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front()))) line.remove_prefix(1);
        while (!line.empty() && (std::isspace(static_cast<unsigned char>(line.back())) || line.back() == ',')) {
            line.remove_suffix(1);
        }
        if (line.empty()) continue;
        double value = 0.0;
        const auto [end, ec] = std::from_chars(line.data(), line.data() + line.size(), value);
        if (ec != std::errc{} || end != line.data() + line.size() || !std::isfinite(value)) {
            bad("line " + std::to_string(line_no) + ": not a finite decimal: '" + std::string(line) + "'");
        }
        samples.push_back(value);
    }
    if (samples.empty()) bad("CSV weight has no samples");
    return GridWeight::line(std::move(samples));
}

GridWeight parse_weight(std::string_view text) {
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        return c == '{' ? parse_weight_json(text) : parse_weight_csv(text);
    }
    bad("empty weight file");
}

GridWeight read_weight(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_weight(buf.str());
}

std::string weight_to_json(const GridWeight& w) {
    nlohmann::json doc;
    doc["dims"] = w.dims();
    doc["samples"] = std::vector<double>(w.samples().begin(), w.samples().end());
    return doc.dump();
}

void write_weight(const std::filesystem::path& path, const GridWeight& w) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
    out << weight_to_json(w) << '\n';
    if (!out) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

}  // namespace apchar::io
