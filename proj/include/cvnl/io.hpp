#pragma once

#include "cvnl/crelu_net.hpp"
#include "cvnl/quadratic_net.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace cvnl::io {

using Json = nlohmann::ordered_json;

// Shared file formats. Complex numbers are always 2-element [re, im] arrays.
// Dataset: {"d", "n", "X": one array per column, "y"}.
// Weights: {"k", "d", "W": one array per row, "v"}; CReLU nets extend this
// with {"b1", "b2", "s_plus", "s_minus"}.

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);

Json dataset_to_json(const Dataset& data);
Dataset dataset_from_json(const Json& j);

Json quadnet_to_json(const QuadNet& net);
QuadNet quadnet_from_json(const Json& j);

Json crelu_to_json(const crelu::CReluNet& net);
crelu::CReluNet crelu_from_json(const Json& j);

Json load_json_file(const std::string& path);
void save_json_file(const Json& j, const std::string& path);

Dataset load_dataset(const std::string& path);
QuadNet load_quadnet(const std::string& path);

} // namespace cvnl::io
