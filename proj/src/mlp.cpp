#include "ranslice/mlp.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <stdexcept>

#include <json.hpp>

namespace ranslice {

MlpModel::MlpModel(std::vector<int> layer_dims, std::uint64_t seed)
    : layer_dims_(std::move(layer_dims)) {
  if (layer_dims_.size() < 2)
    throw std::invalid_argument("network needs at least input and output dims");
  for (int dim : layer_dims_)
    if (dim <= 0) throw std::invalid_argument("layer dims must be positive");
  std::mt19937_64 rng(seed);
  layers_.reserve(layer_dims_.size() - 1);
  for (std::size_t l = 0; l + 1 < layer_dims_.size(); ++l) {
    const int fan_in = layer_dims_[l];
    const int fan_out = layer_dims_[l + 1];
    const double bound = std::sqrt(6.0 / (fan_in + fan_out));
    std::uniform_real_distribution<double> uniform(-bound, bound);
    Layer layer;
    layer.weights.resize(fan_out, fan_in);
    for (int r = 0; r < fan_out; ++r)
      for (int c = 0; c < fan_in; ++c) layer.weights(r, c) = uniform(rng);
    layer.bias = Eigen::VectorXd::Zero(fan_out);
    layers_.push_back(std::move(layer));
  }
}

std::vector<double> MlpModel::forward(std::span<const double> input) const {
  if (static_cast<int>(input.size()) != input_dim())
    throw std::invalid_argument("input size mismatch");
  Eigen::VectorXd a =
      Eigen::Map<const Eigen::VectorXd>(input.data(), static_cast<Eigen::Index>(input.size()));
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    a = layers_[l].weights * a + layers_[l].bias;
    if (l + 1 < layers_.size()) a = a.cwiseMax(0.0);
  }
  return std::vector<double>(a.data(), a.data() + a.size());
}

double MlpModel::train_step(std::span<const double> input, int output_index, double target,
                            double learning_rate) {
  if (static_cast<int>(input.size()) != input_dim())
    throw std::invalid_argument("input size mismatch");
  if (output_index < 0 || output_index >= output_dim())
    throw std::out_of_range("output index out of range");
  if (!std::isfinite(target)) throw std::invalid_argument("target must be finite");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate))
    throw std::invalid_argument("learning rate must be positive and finite");

  const std::size_t depth = layers_.size();
  std::vector<Eigen::VectorXd> acts(depth + 1);  // acts[l] feeds layer l
  std::vector<Eigen::VectorXd> pre(depth);
  acts[0] =
      Eigen::Map<const Eigen::VectorXd>(input.data(), static_cast<Eigen::Index>(input.size()));
  for (std::size_t l = 0; l < depth; ++l) {
    pre[l] = layers_[l].weights * acts[l] + layers_[l].bias;
    acts[l + 1] = l + 1 < depth ? pre[l].cwiseMax(0.0).eval() : pre[l];
  }
  const double predicted = acts[depth][output_index];
  const double loss = (target - predicted) * (target - predicted);

  // Only the selected output unit carries error.
  Eigen::VectorXd delta = Eigen::VectorXd::Zero(output_dim());
  delta[output_index] = 2.0 * (predicted - target);
  for (std::size_t l = depth; l-- > 0;) {
    const Eigen::VectorXd grad_bias = delta;
    const Eigen::MatrixXd grad_weights = delta * acts[l].transpose();
    if (l > 0)
      delta = (layers_[l].weights.transpose() * delta)
                  .cwiseProduct((pre[l - 1].array() > 0.0).cast<double>().matrix());
    layers_[l].weights -= learning_rate * grad_weights;
    layers_[l].bias -= learning_rate * grad_bias;
  }
  for (const Layer& layer : layers_)
    if (!layer.weights.allFinite() || !layer.bias.allFinite())
      throw std::runtime_error("network parameters diverged");
  return loss;
}

std::vector<double> MlpModel::parameters() const {
  std::vector<double> flat;
  for (const Layer& layer : layers_) {
    for (Eigen::Index r = 0; r < layer.weights.rows(); ++r)
      for (Eigen::Index c = 0; c < layer.weights.cols(); ++c) flat.push_back(layer.weights(r, c));
    for (Eigen::Index r = 0; r < layer.bias.size(); ++r) flat.push_back(layer.bias[r]);
  }
  return flat;
}

void MlpModel::set_parameters(std::span<const double> flat) {
  std::size_t expected = 0;
  for (const Layer& layer : layers_)
    expected += static_cast<std::size_t>(layer.weights.size() + layer.bias.size());
  if (flat.size() != expected) throw std::invalid_argument("parameter vector size mismatch");
  std::size_t k = 0;
  for (Layer& layer : layers_) {
    for (Eigen::Index r = 0; r < layer.weights.rows(); ++r)
      for (Eigen::Index c = 0; c < layer.weights.cols(); ++c) layer.weights(r, c) = flat[k++];
    for (Eigen::Index r = 0; r < layer.bias.size(); ++r) layer.bias[r] = flat[k++];
  }
}

void MlpModel::save(const std::filesystem::path& path) const {
  nlohmann::json j;
  j["layer_dims"] = layer_dims_;
  j["parameters"] = parameters();
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << j.dump(2) << '\n';
  if (!out.flush()) throw std::runtime_error("write failed: " + path.string());
}

MlpModel MlpModel::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path.string() + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("checkpoint '" + path.string() + "': " + e.what());
  }
  if (!j.contains("layer_dims") || !j.contains("parameters"))
    throw std::invalid_argument("checkpoint '" + path.string() +
                                "': missing layer_dims or parameters");
  MlpModel model(j.at("layer_dims").get<std::vector<int>>(), 0);
  const auto flat = j.at("parameters").get<std::vector<double>>();
  model.set_parameters(flat);
  return model;
}

}  // namespace ranslice
