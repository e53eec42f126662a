#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "causal/cpt.hpp"
#include "causal/eval.hpp"
#include "causal/graph.hpp"
#include "causal/refine.hpp"
#include "causal/types.hpp"

namespace causal {

// File formats. All text is UTF-8 with \n line endings; every writer is
// deterministic so identical inputs produce byte-identical files.
//
//   dataset  CSV, header row of label names, cells 0/1
//   tiers    JSON object {label: "C"|"R"|"S"}
//   graph    JSON {nodes:[{name,tier}], edges:[{from,to,oriented}]}
//   cpts     JSON keyed by node name; parent-config masks as object keys
//   beliefs  CSV, header row, one row of probabilities per instance

std::map<std::string, Tier> load_tier_map(const std::string& path);
void save_tier_map(const LabelSchema& schema, const std::string& path);

BinaryDataset load_dataset(const std::string& csv_path, const std::string& tier_path);
BinaryDataset load_dataset_with_schema(const std::string& csv_path, SchemaPtr schema);
void save_dataset(const BinaryDataset& data, const std::string& path);

CausalGraph load_graph(const std::string& path);
void save_graph(const CausalGraph& g, const std::string& path);

void write_dot(const CausalGraph& g, std::ostream& out);
void save_dot(const CausalGraph& g, const std::string& path);

CptSet load_cpts(const std::string& path, SchemaPtr schema);
void save_cpts(const CptSet& cpts, const std::string& path);

std::vector<BeliefVector> load_beliefs(const std::string& path, SchemaPtr schema);
void save_beliefs(const std::vector<BeliefVector>& beliefs, const std::string& path);

// long-form CSV: instance,iteration,label,belief
void save_traces(const std::vector<RefineTrace>& traces, const LabelSchema& schema,
                 const std::string& path);

// benchmark curves CSV: seed,iteration,mean_f1
void save_benchmark_csv(const BenchmarkResult& result, const std::string& path);
void save_benchmark_json(const BenchmarkResult& result, const std::string& path);

}  // namespace causal
