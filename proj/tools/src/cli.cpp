#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "qnet/check.hpp"
#include "qnet/codec.hpp"
#include "qnet/dot.hpp"
#include "qnet/freecat.hpp"
#include "qnet/symmetry.hpp"

namespace qnet::cli {

namespace {

struct UsageError {
    std::string message;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::parse_error, "cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Json load_json(const std::string& path) { return parse_json(read_file(path)); }

// Element arguments name a file when one exists, otherwise they are inline JSON.
FreeElem load_elem(const std::string& arg, Theory theory) {
    std::error_code ec;
    const bool is_file = std::filesystem::is_regular_file(arg, ec);
    return decode_elem(parse_json(is_file ? read_file(arg) : arg), theory);
}

std::size_t budget_from_env() {
    const char* raw = std::getenv("QNET_BUDGET");
    if (!raw) return default_budget;
    try {
        std::size_t used = 0;
        const std::string text(raw);
        const unsigned long long v = std::stoull(text, &used);
        if (used != text.size() || v == 0 || text.front() == '-') throw std::invalid_argument("bad");
        return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
        throw UsageError{"QNET_BUDGET must be a positive integer"};
    }
}

Json encode_diagnostics(const Diagnostics& ds) {
    Json out = Json::array();
    for (const auto& d : ds) out.push_back({{"where", d.where}, {"message", d.message}});
    return out;
}

Json encode_cone(const NetCone& c) {
    return {{"net", encode(c.net)}, {"left", encode(c.first)}, {"right", encode(c.second)}};
}

void print(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Q-net toolkit: validation, translation and process semantics"};
    app.name(args.empty() ? "qnet" : std::filesystem::path(args.front()).filename().string());
    app.require_subcommand(1);

    std::string net_path, via, from, to, marking, other_path, suite = "all";
    std::size_t steps = 1, layers = 1, width = 1;
    std::optional<std::size_t> reach_width;
    std::uint64_t seed = 1;
    std::size_t cases = 100;
    bool dot = false;

    auto* validate = app.add_subcommand("validate", "check a net for well-formedness");
    validate->add_option("net", net_path, "net JSON file")->required();

    auto* translate = app.add_subcommand("translate", "push a net along a theory arrow");
    translate->add_option("--via", via, "arrow a|b|c|d|e")->required()->check(CLI::IsMember({"a", "b", "c", "d", "e"}));
    translate->add_option("net", net_path, "net JSON file")->required();

    auto* reach = app.add_subcommand("reach", "markings reachable in bounded parallel steps");
    reach->add_option("net", net_path, "net JSON file")->required();
    reach->add_option("--marking", marking, "initial marking (file or inline JSON)")->required();
    reach->add_option("--steps", steps, "number of parallel steps")->required();
    reach->add_option("--width", reach_width, "maximum transitions per step");
    reach->add_flag("--dot", dot, "emit Graphviz instead of JSON");

    auto* homset = app.add_subcommand("homset", "morphism classes between two objects");
    homset->add_option("net", net_path, "net JSON file")->required();
    homset->add_option("--from", from, "source object")->required();
    homset->add_option("--to", to, "target object")->required();
    homset->add_option("--layers", layers, "maximum number of steps")->required();
    homset->add_option("--width", width, "maximum transitions per step")->required();

    auto* homgroup = app.add_subcommand("homgroup", "decide hom-set nonemptiness for an ABGRP net");
    homgroup->add_option("net", net_path, "net JSON file")->required();
    homgroup->add_option("--from", from, "source object")->required();
    homgroup->add_option("--to", to, "target object")->required();

    auto* lin = app.add_subcommand("lin", "all linearizations of a CMON or ABGRP net");
    lin->add_option("net", net_path, "net JSON file")->required();

    auto* linsum = app.add_subcommand("linsum", "sum of all linearizations");
    linsum->add_option("net", net_path, "net JSON file")->required();

    auto* product = app.add_subcommand("product", "product of two nets with projections");
    product->add_option("left", net_path, "net JSON file")->required();
    product->add_option("right", other_path, "net JSON file")->required();

    auto* coproduct = app.add_subcommand("coproduct", "coproduct of two nets with injections");
    coproduct->add_option("left", net_path, "net JSON file")->required();
    coproduct->add_option("right", other_path, "net JSON file")->required();

    auto* check = app.add_subcommand("check", "run the built-in property suites");
    std::vector<std::string> suite_choices = suite_names();
    suite_choices.push_back("all");
    check->add_option("--suite", suite, "suite name or all")->check(CLI::IsMember(suite_choices));
    check->add_option("--seed", seed, "64-bit seed");
    check->add_option("--cases", cases, "cases per theory or arrow");

    try {
        std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
        std::reverse(rest.begin(), rest.end());
        app.parse(rest);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (validate->parsed()) {
            const Diagnostics ds = validate_net(decode_net(load_json(net_path)));
            print(out, {{"valid", ds.empty()}, {"diagnostics", encode_diagnostics(ds)}});
            return ds.empty() ? 0 : 1;
        }
        if (translate->parsed()) {
            const QNet net = decode_net(load_json(net_path));
            require_valid(net);
            print(out, encode(apply_net_functor(arrow_from_string(via), net)));
            return 0;
        }
        if (reach->parsed()) {
            const QNet net = decode_net(load_json(net_path));
            require_valid(net);
            const ReachResult r = reachable(net, load_elem(marking, net.theory), steps, reach_width);
            if (dot) {
                out << to_dot(r);
                return 0;
            }
            Json ms = Json::array();
            for (const auto& m : r.markings) ms.push_back(encode(m));
            Json es = Json::array();
            for (const auto& e : r.edges) {
                es.push_back({{"from", encode(e.from)}, {"to", encode(e.to)}, {"fired", encode(layer_fired(e.layer))},
                              {"layer", encode(e.layer)}});
            }
            print(out, {{"markings", ms}, {"edges", es}});
            return 0;
        }
        if (homset->parsed()) {
            const QNet net = decode_net(load_json(net_path));
            require_valid(net);
            const std::size_t budget = budget_from_env();
            const auto classes =
                hom_enumerate(net, load_elem(from, net.theory), load_elem(to, net.theory), layers, width, budget);
            Json cs = Json::array();
            for (const auto& c : classes) cs.push_back({{"term", encode(c.term)}, {"layered", encode(c.form)}});
            print(out, {{"classes", cs}});
            return 0;
        }
        if (homgroup->parsed()) {
            const QNet net = decode_net(load_json(net_path));
            require_valid(net);
            const auto w = hom_group_witness(net, load_elem(from, net.theory), load_elem(to, net.theory));
            print(out, {{"nonempty", w.has_value()}, {"witness", w ? encode(*w) : Json(nullptr)}});
            return 0;
        }
        if (lin->parsed()) {
            Json ls = Json::array();
            for (const auto& l : linearizations(decode_net(load_json(net_path)))) ls.push_back(encode(l));
            print(out, {{"linearizations", ls}});
            return 0;
        }
        if (linsum->parsed()) {
            print(out, encode(linearization_sum(decode_net(load_json(net_path)))));
            return 0;
        }
        if (product->parsed() || coproduct->parsed()) {
            const QNet a = decode_net(load_json(net_path));
            const QNet b = decode_net(load_json(other_path));
            require_valid(a);
            require_valid(b);
            print(out, encode_cone(product->parsed() ? qnet::product(a, b) : qnet::coproduct(a, b)));
            return 0;
        }
        if (check->parsed()) {
            const CheckOptions options{seed, cases};
            const std::vector<std::string> names = suite == "all" ? suite_names() : std::vector<std::string>{suite};
            Json reports = Json::array();
            bool ok = true;
            for (const auto& n : names) {
                const SuiteReport r = run_suite(n, options);
                ok = ok && r.ok();
                reports.push_back({{"name", r.name},
                                   {"cases", r.cases},
                                   {"ok", r.ok()},
                                   {"failures", r.failures}});
            }
            print(out, {{"suites", reports}, {"ok", ok}});
            return ok ? 0 : 1;
        }
    } catch (const UsageError& e) {
        err << e.message << "\n";
        return 2;
    } catch (const Error& e) {
        err << Json{{"error", {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}}}}.dump() << "\n";
        return 1;
    }
    return 2;
}

} // namespace qnet::cli
