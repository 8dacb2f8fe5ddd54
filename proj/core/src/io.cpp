#include "chogen/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace chogen {

namespace {

using nlohmann::json;

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorKind::Parse, what); }

ChoiceDesign build_design(std::vector<std::vector<std::string>> rows) {
    if (rows.empty()) parse_error("design has no choice sets");
    std::vector<ChoiceSet> sets;
    sets.reserve(rows.size());
    for (const auto& row : rows) {
        std::vector<Treatment> options;
        options.reserve(row.size());
        for (const auto& text : row) options.push_back(Treatment::from_string(text));
        sets.emplace_back(std::move(options));
    }
    return ChoiceDesign(std::move(sets));
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

std::string to_json(const ChoiceDesign& d, const DesignMeta& meta) {
    json sets = json::array();
    for (const auto& s : d.sets()) {
        json row = json::array();
        for (const auto& t : s.options()) row.push_back(t.to_string());
        sets.push_back(std::move(row));
    }
    json doc;
    doc["n"] = d.factors();
    doc["m"] = d.set_size();
    doc["sets"] = std::move(sets);
    doc["meta"] = {{"construction", meta.construction}, {"model", meta.model}, {"generators", meta.generators}};
    return doc.dump(2) + "\n";
}

DesignDocument design_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        parse_error(std::string("invalid JSON: ") + e.what());
    }
    try {
        auto rows = doc.at("sets").get<std::vector<std::vector<std::string>>>();
        DesignDocument out{build_design(std::move(rows)), {}};
        if (doc.contains("n") && doc.at("n").get<int>() != out.design.factors()) {
            parse_error("\"n\" disagrees with the treatment width");
        }
        if (doc.contains("m") && doc.at("m").get<std::size_t>() != out.design.set_size()) {
            parse_error("\"m\" disagrees with the set size");
        }
        if (doc.contains("meta")) {
            const auto& meta = doc.at("meta");
            out.meta.construction = meta.value("construction", "");
            out.meta.model = meta.value("model", "");
            out.meta.generators = meta.value("generators", std::vector<std::string>{});
        }
        return out;
    } catch (const json::exception& e) {
        parse_error(std::string("malformed design document: ") + e.what());
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Parse) throw;
        parse_error(e.what());
    }
}

std::string to_csv(const ChoiceDesign& d) {
    std::ostringstream out;
    out << "set,option,treatment\n";
    for (std::size_t p = 0; p < d.num_sets(); ++p) {
        for (std::size_t i = 0; i < d.set_size(); ++i) out << p + 1 << ',' << i + 1 << ',' << d[p][i].to_string() << '\n';
    }
    return out.str();
}

ChoiceDesign design_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line.rfind("set,option,treatment", 0) != 0) parse_error("missing CSV header");
    std::map<std::size_t, std::map<std::size_t, std::string>> cells;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string set_text, option_text, treatment;
        if (!std::getline(fields, set_text, ',') || !std::getline(fields, option_text, ',') ||
            !std::getline(fields, treatment)) {
            parse_error("line " + std::to_string(line_no) + ": expected three fields");
        }
        try {
            const auto p = std::stoul(set_text);
            const auto i = std::stoul(option_text);
            if (p == 0 || i == 0) parse_error("line " + std::to_string(line_no) + ": indices are 1-based");
            if (!cells[p].emplace(i, treatment).second) parse_error("line " + std::to_string(line_no) + ": repeated cell");
        } catch (const std::logic_error&) {
            parse_error("line " + std::to_string(line_no) + ": bad index");
        }
    }
    std::vector<std::vector<std::string>> rows;
    std::size_t expected_set = 1;
    for (auto& [p, options] : cells) {
        if (p != expected_set++) parse_error("set indices are not contiguous");
        std::vector<std::string> row;
        std::size_t expected_option = 1;
        for (auto& [i, t] : options) {
            if (i != expected_option++) parse_error("option indices in set " + std::to_string(p) + " are not contiguous");
            row.push_back(std::move(t));
        }
        rows.push_back(std::move(row));
    }
    try {
        return build_design(std::move(rows));
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Parse) throw;
        parse_error(e.what());
    }
}

DesignDocument read_design_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) parse_error("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (ends_with(path, ".csv")) return {design_from_csv(buffer.str()), {}};
    return design_from_json(buffer.str());
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) parse_error("cannot write " + path);
    out << text;
    if (!out) parse_error("write failed for " + path);
}

}  // namespace chogen
