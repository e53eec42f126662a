#include "causal/io.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "causal/util.hpp"

namespace causal {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw IoError("failed writing '" + path + "'");
}

json parse_json(const std::string& path) {
    const std::string text = read_file(path);
    json parsed = json::parse(text, nullptr, false);
    if (parsed.is_discarded()) throw ParseError("'" + path + "' is not valid JSON");
    return parsed;
}

void write_json(const json& value, const std::string& path) {
    write_file(path, value.dump(2) + "\n");
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(field);
            field.clear();
        } else {
            field.push_back(c);
        }
    }
    fields.push_back(field);
    return fields;
}

std::vector<std::string> read_lines(const std::string& path) {
    const std::string text = read_file(path);
    std::vector<std::string> lines;
    std::string line;
    for (char c : text) {
        if (c == '\n') {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            lines.push_back(line);
            line.clear();
        } else {
            line.push_back(c);
        }
    }
    if (!line.empty()) lines.push_back(line);
    // drop trailing blank lines
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

double parse_probability(const std::string& field, const std::string& where) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw ParseError(where + ": '" + field + "' is not a number");
    }
    if (!(value >= 0.0 && value <= 1.0)) throw ParseError(where + ": value outside [0,1]");
    return value;
}

SchemaPtr schema_from_header(const std::vector<std::string>& names,
                             const std::map<std::string, Tier>& tiers, const std::string& path) {
    std::vector<Label> labels;
    labels.reserve(names.size());
    for (std::size_t i = 0; i < names.size(); ++i) {
        const std::string& name = names[i];
        if (name.empty()) {
            throw ParseError(path + ": empty label name at column " + std::to_string(i + 1));
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (names[j] == name) {
                throw ParseError(path + ": duplicate label name '" + name + "' at column " +
                                 std::to_string(i + 1));
            }
        }
        const auto it = tiers.find(name);
        if (it == tiers.end()) {
            throw ParseError(path + ": missing tier assignment for '" + name + "' (column " +
                             std::to_string(i + 1) + ")");
        }
        labels.push_back({name, it->second});
    }
    return make_schema(std::move(labels));
}

void check_header_matches(const std::vector<std::string>& names, const LabelSchema& schema,
                          const std::string& path) {
    if (static_cast<int>(names.size()) != schema.size()) {
        throw SchemaMismatch(path + ": header has " + std::to_string(names.size()) +
                             " columns, expected " + std::to_string(schema.size()));
    }
    for (int i = 0; i < schema.size(); ++i) {
        if (names[i] != schema.name(i)) {
            throw SchemaMismatch(path + ": column " + std::to_string(i + 1) + " is '" + names[i] +
                                 "', expected '" + schema.name(i) + "'");
        }
    }
}

BinaryDataset dataset_from_lines(const std::vector<std::string>& lines, SchemaPtr schema,
                                 const std::string& path) {
    if (lines.size() < 2) throw ParseError(path + ": no data rows");
    const int m = schema->size();
    const int n_rows = static_cast<int>(lines.size()) - 1;
    std::vector<std::uint8_t> cells;
    cells.reserve(static_cast<std::size_t>(n_rows) * m);
    for (int r = 0; r < n_rows; ++r) {
        const std::vector<std::string> fields = split_csv_line(lines[r + 1]);
        if (static_cast<int>(fields.size()) != m) {
            throw ParseError(path + ": row " + std::to_string(r + 1) + " has " +
                             std::to_string(fields.size()) + " cells, expected " + std::to_string(m));
        }
        for (int c = 0; c < m; ++c) {
            if (fields[c] == "0") {
                cells.push_back(0);
            } else if (fields[c] == "1") {
                cells.push_back(1);
            } else {
                throw ParseError(path + ": non-binary cell '" + fields[c] + "' at row " +
                                 std::to_string(r + 1) + ", column '" + schema->name(c) + "'");
            }
        }
    }
    return BinaryDataset(std::move(schema), std::move(cells), n_rows);
}

}  // namespace

std::map<std::string, Tier> load_tier_map(const std::string& path) {
    const json parsed = parse_json(path);
    if (!parsed.is_object()) throw ParseError(path + ": expected a JSON object of label -> tier");
    std::map<std::string, Tier> tiers;
    for (const auto& [name, value] : parsed.items()) {
        if (!value.is_string()) throw ParseError(path + ": tier for '" + name + "' must be a string");
        const auto tier = tier_from_code(value.get<std::string>());
        if (!tier.has_value()) {
            throw ParseError(path + ": tier for '" + name + "' must be one of C, R, S");
        }
        tiers.emplace(name, *tier);
    }
    return tiers;
}

void save_tier_map(const LabelSchema& schema, const std::string& path) {
    json out = json::object();
    for (int i = 0; i < schema.size(); ++i) out[schema.name(i)] = tier_code(schema.tier(i));
    write_json(out, path);
}

BinaryDataset load_dataset(const std::string& csv_path, const std::string& tier_path) {
    const std::map<std::string, Tier> tiers = load_tier_map(tier_path);
    const std::vector<std::string> lines = read_lines(csv_path);
    if (lines.empty()) throw ParseError(csv_path + ": file is empty");
    SchemaPtr schema = schema_from_header(split_csv_line(lines[0]), tiers, csv_path);
    return dataset_from_lines(lines, std::move(schema), csv_path);
}

BinaryDataset load_dataset_with_schema(const std::string& csv_path, SchemaPtr schema) {
    const std::vector<std::string> lines = read_lines(csv_path);
    if (lines.empty()) throw ParseError(csv_path + ": file is empty");
    check_header_matches(split_csv_line(lines[0]), *schema, csv_path);
    return dataset_from_lines(lines, std::move(schema), csv_path);
}

void save_dataset(const BinaryDataset& data, const std::string& path) {
    std::string out;
    const LabelSchema& schema = *data.schema();
    for (int c = 0; c < schema.size(); ++c) {
        if (c > 0) out.push_back(',');
        out += schema.name(c);
    }
    out.push_back('\n');
    for (int r = 0; r < data.rows(); ++r) {
        for (int c = 0; c < data.cols(); ++c) {
            if (c > 0) out.push_back(',');
            out.push_back(data.at(r, c) ? '1' : '0');
        }
        out.push_back('\n');
    }
    write_file(path, out);
}

CausalGraph load_graph(const std::string& path) {
    const json parsed = parse_json(path);
    if (!parsed.contains("nodes") || !parsed["nodes"].is_array()) {
        throw ParseError(path + ": missing 'nodes' array");
    }
    std::vector<Label> labels;
    for (const json& node : parsed["nodes"]) {
        if (!node.contains("name") || !node.contains("tier")) {
            throw ParseError(path + ": node entries need 'name' and 'tier'");
        }
        const auto tier = tier_from_code(node["tier"].get<std::string>());
        if (!tier.has_value()) throw ParseError(path + ": bad tier for node '" +
                                                node["name"].get<std::string>() + "'");
        labels.push_back({node["name"].get<std::string>(), *tier});
    }
    CausalGraph g(make_schema(std::move(labels)));

    if (parsed.contains("edges")) {
        for (const json& edge : parsed["edges"]) {
            const std::string from = edge.at("from").get<std::string>();
            const std::string to = edge.at("to").get<std::string>();
            const int u = g.schema()->index_of(from);
            const int v = g.schema()->index_of(to);
            if (u < 0 || v < 0) throw ParseError(path + ": edge references unknown node");
            if (edge.at("oriented").get<bool>()) {
                g.add_directed(u, v);
            } else {
                g.add_undirected(u, v);
            }
        }
    }
    return g;
}

void save_graph(const CausalGraph& g, const std::string& path) {
    const LabelSchema& schema = *g.schema();
    json nodes = json::array();
    for (int i = 0; i < schema.size(); ++i) {
        nodes.push_back({{"name", schema.name(i)}, {"tier", tier_code(schema.tier(i))}});
    }
    json edges = json::array();
    for (const Edge& e : g.edges()) {
        edges.push_back(
            {{"from", schema.name(e.from)}, {"to", schema.name(e.to)}, {"oriented", e.oriented}});
    }
    write_json(json{{"nodes", nodes}, {"edges", edges}}, path);
}

void write_dot(const CausalGraph& g, std::ostream& out) {
    const LabelSchema& schema = *g.schema();
    out << "digraph G {\n";
    for (int i = 0; i < schema.size(); ++i) {
        out << "  \"" << schema.name(i) << "\" [tier=\"" << tier_code(schema.tier(i)) << "\"];\n";
    }
    for (const Edge& e : g.edges()) {
        out << "  \"" << schema.name(e.from) << "\" " << (e.oriented ? "->" : "--") << " \""
            << schema.name(e.to) << "\";\n";
    }
    out << "}\n";
}

void save_dot(const CausalGraph& g, const std::string& path) {
    std::ostringstream out;
    write_dot(g, out);
    write_file(path, out.str());
}

CptSet load_cpts(const std::string& path, SchemaPtr schema) {
    const json parsed = parse_json(path);
    std::vector<NodeCpt> nodes(schema->size());
    const json& node_obj = parsed.at("nodes");
    for (int v = 0; v < schema->size(); ++v) {
        const std::string& name = schema->name(v);
        if (!node_obj.contains(name)) throw ParseError(path + ": missing CPT for '" + name + "'");
        const json& entry = node_obj.at(name);
        NodeCpt& cpt = nodes[v];
        for (const json& parent : entry.at("parents")) {
            const int p = schema->index_of(parent.get<std::string>());
            if (p < 0) throw ParseError(path + ": unknown parent for '" + name + "'");
            cpt.parents.push_back(p);
        }
        const std::size_t configs = std::size_t{1} << cpt.parents.size();
        cpt.p1.assign(configs, 0.0);
        const json& table = entry.at("p1");
        if (table.size() != configs) {
            throw ParseError(path + ": CPT for '" + name + "' has wrong size");
        }
        for (const auto& [key, value] : table.items()) {
            const std::size_t mask = std::stoull(key);
            if (mask >= configs) throw ParseError(path + ": bad config mask for '" + name + "'");
            cpt.p1[mask] = value.get<double>();
        }
    }

    std::map<std::pair<int, int>, EdgeCpt> edges;
    for (const json& entry : parsed.at("edges")) {
        const int u = schema->index_of(entry.at("from").get<std::string>());
        const int v = schema->index_of(entry.at("to").get<std::string>());
        if (u < 0 || v < 0) throw ParseError(path + ": edge references unknown node");
        EdgeCpt table;
        table.forward_p1[0] = entry.at("forward_p1").at(0).get<double>();
        table.forward_p1[1] = entry.at("forward_p1").at(1).get<double>();
        table.backward_p1[0] = entry.at("backward_p1").at(0).get<double>();
        table.backward_p1[1] = entry.at("backward_p1").at(1).get<double>();
        table.from_marginal_p1 = entry.at("from_marginal_p1").get<double>();
        table.to_marginal_p1 = entry.at("to_marginal_p1").get<double>();
        edges.emplace(std::make_pair(u, v), table);
    }
    return CptSet(std::move(schema), std::move(nodes), std::move(edges));
}

void save_cpts(const CptSet& cpts, const std::string& path) {
    const LabelSchema& schema = *cpts.schema();
    json node_obj = json::object();
    for (int v = 0; v < schema.size(); ++v) {
        const NodeCpt& cpt = cpts.node(v);
        json parents = json::array();
        for (int p : cpt.parents) parents.push_back(schema.name(p));
        json table = json::object();
        for (std::size_t mask = 0; mask < cpt.p1.size(); ++mask) {
            table[std::to_string(mask)] = cpt.p1[mask];
        }
        node_obj[schema.name(v)] = {{"parents", parents}, {"p1", table}};
    }
    json edge_arr = json::array();
    for (const auto& [key, table] : cpts.edges()) {
        edge_arr.push_back({{"from", schema.name(key.first)},
                            {"to", schema.name(key.second)},
                            {"forward_p1", {table.forward_p1[0], table.forward_p1[1]}},
                            {"backward_p1", {table.backward_p1[0], table.backward_p1[1]}},
                            {"from_marginal_p1", table.from_marginal_p1},
                            {"to_marginal_p1", table.to_marginal_p1}});
    }
    write_json(json{{"nodes", node_obj}, {"edges", edge_arr}}, path);
}

std::vector<BeliefVector> load_beliefs(const std::string& path, SchemaPtr schema) {
    const std::vector<std::string> lines = read_lines(path);
    if (lines.empty()) throw ParseError(path + ": file is empty");
    check_header_matches(split_csv_line(lines[0]), *schema, path);
    std::vector<BeliefVector> beliefs;
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const std::vector<std::string> fields = split_csv_line(lines[r]);
        if (static_cast<int>(fields.size()) != schema->size()) {
            throw ParseError(path + ": row " + std::to_string(r) + " has wrong width");
        }
        std::vector<double> p(fields.size());
        for (std::size_t c = 0; c < fields.size(); ++c) {
            p[c] = parse_probability(fields[c], path + ": row " + std::to_string(r));
        }
        beliefs.emplace_back(schema, std::move(p));
    }
    if (beliefs.empty()) throw ParseError(path + ": no belief rows");
    return beliefs;
}

void save_beliefs(const std::vector<BeliefVector>& beliefs, const std::string& path) {
    if (beliefs.empty()) throw InvalidArgument("no belief vectors to save");
    const LabelSchema& schema = *beliefs.front().schema();
    std::string out;
    for (int c = 0; c < schema.size(); ++c) {
        if (c > 0) out.push_back(',');
        out += schema.name(c);
    }
    out.push_back('\n');
    for (const BeliefVector& belief : beliefs) {
        require_same_schema(belief.schema(), beliefs.front().schema(), "save_beliefs");
        for (int c = 0; c < belief.size(); ++c) {
            if (c > 0) out.push_back(',');
            out += format_double(belief.at(c));
        }
        out.push_back('\n');
    }
    write_file(path, out);
}

void save_traces(const std::vector<RefineTrace>& traces, const LabelSchema& schema,
                 const std::string& path) {
    std::string out = "instance,iteration,label,belief\n";
    for (std::size_t i = 0; i < traces.size(); ++i) {
        for (std::size_t t = 0; t < traces[i].iterations.size(); ++t) {
            const BeliefVector& beliefs = traces[i].iterations[t];
            for (int c = 0; c < beliefs.size(); ++c) {
                out += std::to_string(i) + "," + std::to_string(t) + "," + schema.name(c) + "," +
                       format_double(beliefs.at(c)) + "\n";
            }
        }
    }
    write_file(path, out);
}

void save_benchmark_csv(const BenchmarkResult& result, const std::string& path) {
    std::string out = "seed,iteration,mean_f1\n";
    for (std::size_t k = 0; k < result.reports.size(); ++k) {
        const std::vector<double>& curve = result.reports[k].mean_f1;
        for (std::size_t t = 0; t < curve.size(); ++t) {
            out += std::to_string(result.seeds[k]) + "," + std::to_string(t) + "," +
                   format_double(curve[t]) + "\n";
        }
    }
    write_file(path, out);
}

void save_benchmark_json(const BenchmarkResult& result, const std::string& path) {
    const EvalConfig& config = result.reports.front().config;
    json config_echo = {{"alpha", config.alpha},
                        {"max_cond", config.max_cond},
                        {"smoothing", config.smoothing},
                        {"bandwidth", config.bandwidth},
                        {"allow_tier_skip", config.allow_tier_skip},
                        {"epsilon", config.refine.epsilon},
                        {"tau", config.refine.tau},
                        {"children_only", config.refine.children_only},
                        {"synchronous", config.refine.synchronous}};

    json runs = json::array();
    for (std::size_t k = 0; k < result.reports.size(); ++k) {
        const EvalReport& report = result.reports[k];
        runs.push_back({{"seed", result.seeds[k]},
                        {"mean_f1", report.mean_f1},
                        {"baseline_mean_f1", report.baseline_mean_f1()},
                        {"per_instance_f1", report.per_instance_f1},
                        {"discovered_edges", report.discovered_edges},
                        {"ci_tests", report.discovery_stats.ci_tests},
                        {"low_power_skips", report.discovery_stats.low_power_skips}});
    }

    write_json(json{{"config", config_echo},
                    {"mean_f1", result.mean_f1},
                    {"baseline_mean_f1", result.baseline_mean_f1()},
                    {"best_mean_f1", result.best_mean_f1()},
                    {"runs", runs}},
               path);
}

}  // namespace causal
