#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chogen/catalog.hpp"
#include "chogen/constructions.hpp"
#include "chogen/io.hpp"
#include "chogen/optimality.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNotCertified = 2;
constexpr int kExitUnsupported = 3;
constexpr int kExitIo = 4;

struct Options {
    std::string model = "main-effects";
    int m = 0;
    int n = 0;
    int r = 0;
    std::string generators;
    std::string out;
    std::string format = "json";
    std::string seed_columns;
    std::string file;
    std::string block = "all";
    std::string table_format = "text";
};

std::vector<std::string> split(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::vector<int> parse_columns(const std::string& text) {
    std::vector<int> out;
    for (const auto& item : split(text)) {
        try {
            out.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw chogen::Error(chogen::ErrorKind::Parse, "bad seed column '" + item + "'");
        }
    }
    return out;
}

chogen::ModelSpec model_from_name(const std::string& name, int n, int r) {
    if (name == "spec-group") return chogen::ModelSpec::specified_group(n, r);
    const auto block = chogen::parse_block(name);
    if (!block) throw chogen::Error(chogen::ErrorKind::Parse, "unknown model '" + name + "'");
    return chogen::model_for_block(*block, n);
}

struct Built {
    chogen::ChoiceDesign design;
    std::string construction;
};

Built build_design(const Options& o) {
    using namespace chogen;
    const auto columns = parse_columns(o.seed_columns);
    std::vector<Generator> generators;
    for (const auto& g : split(o.generators)) generators.push_back(Generator::from_string(g));

    if (o.model == "spec-group") {
        SpecifiedOptions options;
        options.group_size = o.r;
        options.columns = columns;
        ConstructionRecipe recipe;
        recipe.id = o.m == 4 ? RecipeId::SpecGroupM4 : RecipeId::SpecGroupM3;
        recipe.n = o.n;
        recipe.m = o.m;
        recipe.group_size = o.r;
        return {specified_design(o.n, o.m, SpecifiedScope::Group, options), recipe.describe()};
    }
    const auto block = parse_block(o.model);
    if (!block) throw Error(ErrorKind::Parse, "unknown model '" + o.model + "'");

    const bool generator_family = *block == TableBlock::MainEffects || *block == TableBlock::BroaderMainEffects;
    if (!generators.empty() && !generator_family) {
        throw Error(ErrorKind::Unsupported, "--generators applies to main-effects and broader only");
    }
    if (!generators.empty() || (!columns.empty() && generator_family)) {
        ConstructionRecipe recipe;
        recipe.id = RecipeId::Theorem1Generator;
        recipe.n = o.n;
        recipe.m = o.m;
        recipe.generators = generators;
        recipe.columns = columns;
        recipe.half = *block == TableBlock::MainEffects;
        return {realize(recipe), recipe.describe()};
    }
    if (!columns.empty()) {
        ConstructionRecipe recipe;
        recipe.n = o.n;
        recipe.m = o.m;
        recipe.columns = columns;
        if (*block == TableBlock::SpecifiedAll) {
            recipe.id = o.m == 4 ? RecipeId::SpecAllM4 : RecipeId::SpecAllM3;
        } else {
            recipe.id = o.m == 4 ? RecipeId::Spec2fM4 : RecipeId::Spec2fM3;
        }
        return {realize(recipe), recipe.describe()};
    }
    auto entry = catalog_lookup(*block, o.m, o.n);
    if (!entry.design) {
        std::string detail;
        for (const auto& c : entry.candidates) detail += "\n  " + c.recipe.describe() + ": " + c.note;
        throw Error(ErrorKind::Unsupported, "no construction certifies for these parameters" + detail);
    }
    return {*entry.design, entry.recipe->describe()};
}

int run_generate(const Options& o) {
    auto built = build_design(o);
    const auto model = model_from_name(o.model, o.n, o.r);
    const auto report = chogen::verify(built.design, model);
    if (!report.certified()) {
        std::cerr << "construction " << built.construction << " did not certify; nothing written\n"
                  << report.summary();
        return kExitNotCertified;
    }
    chogen::DesignMeta meta{built.construction, o.model, split(o.generators)};
    const std::string text = o.format == "csv" ? chogen::to_csv(built.design) : chogen::to_json(built.design, meta);
    std::ostream& summary_stream = o.out.empty() ? std::cerr : std::cout;
    if (o.out.empty()) {
        std::cout << text;
    } else {
        chogen::write_text_file(o.out, text);
    }
    summary_stream << "construction: " << built.construction << '\n'
                   << "sets: " << built.design.num_sets() << '\n'
                   << report.summary();
    return kExitOk;
}

int run_verify(const Options& o) {
    const auto doc = chogen::read_design_file(o.file);
    const auto model = model_from_name(o.model, doc.design.factors(), o.r);
    const auto report = chogen::verify(doc.design, model);
    std::cout << "n: " << doc.design.factors() << ", m: " << doc.design.set_size()
              << ", sets: " << doc.design.num_sets() << '\n'
              << report.summary();
    return report.certified() ? kExitOk : kExitNotCertified;
}

std::string optional_text(const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : ""; }
std::string optional_text(const std::optional<int>& v) { return v ? std::to_string(*v) : ""; }

std::string csv_quote(const std::string& text) {
    if (text.find_first_of(",\"") == std::string::npos) return text;
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

int run_table(const Options& o) {
    std::vector<chogen::TableBlock> blocks;
    if (o.block != "all") {
        const auto block = chogen::parse_block(o.block);
        if (!block) throw chogen::Error(chogen::ErrorKind::Parse, "unknown block '" + o.block + "'");
        blocks.push_back(*block);
    }
    const auto report = chogen::reproduce_table1(blocks);
    if (o.table_format == "csv") {
        std::cout << "block,m,n,table_n,achieved_n,status,construction,exception\n";
        for (const auto& e : report.entries) {
            std::cout << to_string(e.block) << ',' << e.m << ',' << e.n << ',' << optional_text(e.table_sets) << ','
                      << optional_text(e.achieved_sets) << ',' << to_string(e.status) << ','
                      << csv_quote(e.recipe ? e.recipe->describe() : "") << ',' << csv_quote(e.exception.value_or(""))
                      << '\n';
        }
    } else {
        for (const auto& e : report.entries) {
            if (e.status == chogen::CatalogStatus::BlankCell) continue;
            std::cout << to_string(e.block) << " m=" << e.m << " n=" << e.n << " table=" << optional_text(e.table_sets)
                      << " achieved=" << optional_text(e.achieved_sets) << ' ' << to_string(e.status);
            if (e.recipe) std::cout << ' ' << e.recipe->describe();
            std::cout << '\n';
        }
        std::cout << report.summary();
    }
    return report.consistent() ? kExitOk : kExitNotCertified;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Construct and certify optimal paired and multiple choice designs"};
    app.require_subcommand(1);
    Options o;

    const std::vector<std::string> models{"main-effects", "broader", "spec-2f", "spec-all", "spec-group"};

    auto* generate = app.add_subcommand("generate", "Build a design and certify it before writing");
    generate->add_option("--model", o.model, "Model")->check(CLI::IsMember(models));
    generate->add_option("--m", o.m, "Options per choice set")->required();
    generate->add_option("--n", o.n, "Number of factors")->required();
    generate->add_option("--r", o.r, "Group size for spec-group");
    generate->add_option("--generators", o.generators, "Comma-separated generator bitstrings");
    generate->add_option("--seed-columns", o.seed_columns, "Comma-separated 1-based Hadamard columns");
    generate->add_option("--out", o.out, "Output file (default: standard output)");
    generate->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));

    auto* verify = app.add_subcommand("verify", "Certify a design file");
    verify->add_option("file", o.file, "Design file (.json or .csv)")->required();
    verify->add_option("--model", o.model, "Model")->check(CLI::IsMember(models));
    verify->add_option("--r", o.r, "Group size for spec-group");

    auto* table = app.add_subcommand("table", "Reproduce the reference table of set counts");
    table->add_option("--block", o.block, "Block")
        ->check(CLI::IsMember({"all", "main-effects", "broader", "spec-2f", "spec-all"}));
    table->add_option("--format", o.table_format, "Output format")->check(CLI::IsMember({"text", "csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitIo;
    }

    try {
        if (*generate) return run_generate(o);
        if (*verify) return run_verify(o);
        return run_table(o);
    } catch (const chogen::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.kind() == chogen::ErrorKind::Parse ? kExitIo : kExitUnsupported;
    }
}
