// Command-line front end. Settings come from defaults, then the JSON file
// given with --config, then individual flags; later sources win.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sslcl/commands.hpp"
#include "sslcl/errors.hpp"

namespace {

enum class FieldType { integer, unsigned_integer, real, text, flag, integer_list, text_list };

/// A flag that overrides one config field.
struct Override {
    std::vector<std::string> path;  ///< key path inside the config document
    FieldType type;
    std::string text;
    std::vector<std::string> list;
    bool flag = false;
    CLI::Option* option = nullptr;
};

class Overrides {
public:
    void add(CLI::App* app, const std::string& name, std::vector<std::string> path, FieldType type,
             const std::string& help) {
        auto o = std::make_unique<Override>();
        o->path = std::move(path);
        o->type = type;
        switch (type) {
            case FieldType::flag: o->option = app->add_flag(name, o->flag, help); break;
            case FieldType::integer_list:
            case FieldType::text_list: o->option = app->add_option(name, o->list, help)->delimiter(','); break;
            default: o->option = app->add_option(name, o->text, help);
        }
        items_.push_back(std::move(o));
    }

    /// Writes every flag that was given on the command line into doc.
    void apply(nlohmann::json& doc) const {
        for (const auto& o : items_) {
            if (o->option->count() == 0) continue;
            nlohmann::json* target = &doc;
            for (std::size_t i = 0; i + 1 < o->path.size(); ++i) target = &(*target)[o->path[i]];
            (*target)[o->path.back()] = value(*o);
        }
    }

private:
    static nlohmann::json value(const Override& o) {
        try {
            switch (o.type) {
                case FieldType::integer: return std::stoll(o.text);
                case FieldType::unsigned_integer: return std::stoull(o.text);
                case FieldType::real: return std::stod(o.text);
                case FieldType::text: return o.text;
                case FieldType::flag: return o.flag;
                case FieldType::integer_list: {
                    nlohmann::json arr = nlohmann::json::array();
                    for (const auto& s : o.list) arr.push_back(std::stoll(s));
                    return arr;
                }
                case FieldType::text_list: return o.list;
            }
        } catch (const std::logic_error&) {
            throw sslcl::ConfigError("invalid value for " + o.option->get_name());
        }
        return nullptr;
    }

    std::vector<std::unique_ptr<Override>> items_;
};

void add_output_flags(CLI::App* app, Overrides& ov) {
    ov.add(app, "--output,-o", {"output"}, FieldType::text, "output file, - for standard output");
    ov.add(app, "--format", {"format"}, FieldType::text, "csv or json");
    ov.add(app, "--seed", {"seed"}, FieldType::unsigned_integer, "master seed");
}

void add_problem_flags(CLI::App* app, Overrides& ov) {
    ov.add(app, "--problem", {"problem"}, FieldType::text, "registry problem name");
    ov.add(app, "--delta", {"delta"}, FieldType::integer, "degree bound");
    ov.add(app, "--palette", {"palette"}, FieldType::integer, "palette size of node-coloring / edge-coloring");
    ov.add(app, "--c", {"c"}, FieldType::integer, "color count of max-* and inc-* problems");
}

void add_experiment_flags(CLI::App* app, Overrides& ov) {
    add_problem_flags(app, ov);
    add_output_flags(app, ov);
    ov.add(app, "--graph", {"graph", "generator"}, FieldType::text,
           "cycle, path, grid, star, complete, random or edge-list");
    ov.add(app, "--n", {"graph", "n"}, FieldType::unsigned_integer, "node count");
    ov.add(app, "--rows", {"graph", "rows"}, FieldType::unsigned_integer, "grid rows");
    ov.add(app, "--cols", {"graph", "cols"}, FieldType::unsigned_integer, "grid columns");
    ov.add(app, "--p", {"graph", "p"}, FieldType::real, "edge probability of random graphs");
    ov.add(app, "--edge-list", {"graph", "path"}, FieldType::text, "edge-list file");
    ov.add(app, "--batches", {"batches"}, FieldType::integer, "fault batches");
    ov.add(app, "--fault-kinds", {"fault_kinds"}, FieldType::text_list, "corrupt, rewire, edge");
    ov.add(app, "--trials", {"trials"}, FieldType::integer, "trials per point");
    ov.add(app, "--max-rounds", {"max_rounds"}, FieldType::integer, "round budget per stabilization");
    ov.add(app, "--confirm-window", {"confirm_window"}, FieldType::integer, "rounds a legal state must persist");
}

}  // namespace

int main(int argc, char** argv) {
    using namespace sslcl;
    CLI::App app{"Self-stabilizing LCL simulator"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "JSON config file");

    Overrides run_ov;
    Overrides scale_ov;
    Overrides mix_ov;
    Overrides elig_ov;

    CLI::App* run = app.add_subcommand("run", "recovery time at one k");
    add_experiment_flags(run, run_ov);
    run_ov.add(run, "--k", {"k"}, FieldType::integer, "manipulated nodes");
    run_ov.add(run, "--randomized-start", {"randomized_start"}, FieldType::flag,
               "start every trial from a fully corrupted state");
    run_ov.add(run, "--trace", {"trace"}, FieldType::text, "JSON-lines trace file");

    CLI::App* scale = app.add_subcommand("scale", "recovery time over a list of k values");
    add_experiment_flags(scale, scale_ov);
    scale_ov.add(scale, "--k-list", {"k_list"}, FieldType::integer_list, "comma-separated k values");
    scale_ov.add(scale, "--assert-scaling", {"assert_scaling"}, FieldType::flag,
                 "exit 2 unless the log-k fit beats the linear fit");

    CLI::App* mix = app.add_subcommand("mix", "distribution of the phase synchronization chain");
    add_output_flags(mix, mix_ov);
    mix_ov.add(mix, "--phi", {"phi"}, FieldType::integer, "phase length");
    mix_ov.add(mix, "--warmup", {"warmup"}, FieldType::integer, "steps per chain");
    mix_ov.add(mix, "--samples", {"samples"}, FieldType::integer, "chains");

    CLI::App* elig = app.add_subcommand("check-eligibility", "structural and statistical eligibility checks");
    add_problem_flags(elig, elig_ov);
    add_output_flags(elig, elig_ov);
    elig_ov.add(elig, "--probe-trials", {"probe_trials"}, FieldType::integer, "probe instances, 0 to skip");

    for (CLI::App* sub : {run, scale, mix, elig}) sub->add_option("--config", config_path, "JSON config file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_config_error;
    }

    try {
        nlohmann::json doc = nlohmann::json::object();
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw ConfigError("cannot read config file " + config_path);
            try {
                doc = nlohmann::json::parse(in);
            } catch (const nlohmann::json::parse_error& e) {
                throw ConfigError("config file is not valid JSON: " + std::string(e.what()));
            }
            if (!doc.is_object()) throw ConfigError("config must be a JSON object");
        }
        if (run->parsed()) run_ov.apply(doc);
        if (scale->parsed()) scale_ov.apply(doc);
        if (mix->parsed()) mix_ov.apply(doc);
        if (elig->parsed()) {
            elig_ov.apply(doc);
            if (!doc.contains("format")) doc["format"] = "json";
        }
        const ExperimentConfig config = config_from_json(doc);

        std::ofstream trace_file;
        if (run->parsed() && !config.trace.empty()) {
            trace_file.open(config.trace, std::ios::binary);
            if (!trace_file) throw ConfigError("cannot write trace file " + config.trace);
        }

        CommandOutput result;
        if (run->parsed()) {
            result = cmd_run(config, trace_file.is_open() ? &trace_file : nullptr);
        } else if (scale->parsed()) {
            result = cmd_scale(config);
        } else if (mix->parsed()) {
            result = cmd_mix(config);
        } else {
            result = cmd_check_eligibility(config);
        }

        if (config.output == "-") {
            write_records(std::cout, result.records, config.format);
        } else {
            std::ofstream out(config.output, std::ios::binary);
            if (!out) throw ConfigError("cannot write output file " + config.output);
            write_records(out, result.records, config.format);
        }
        return result.exit_code;
    } catch (const Timeout& e) {
        std::cerr << "timeout: " << e.what() << "\n";
        return exit_timeout;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config_error;
    }
}
