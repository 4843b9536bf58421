#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace ranslice {

// Dense feed-forward network with ReLU hidden layers and a linear output
// layer. Training is plain SGD, one sample at a time, on the squared error
// of a single output unit; the other outputs receive no gradient.
class MlpModel {
 public:
  // layer_dims = {input, hidden..., output}. Weights start Glorot-uniform
  // (+-sqrt(6/(fan_in+fan_out))), biases at zero, drawn from `seed`.
  MlpModel(std::vector<int> layer_dims, std::uint64_t seed);

  std::vector<double> forward(std::span<const double> input) const;

  // One SGD step on (target - output[output_index])^2; returns the loss
  // before the update.
  double train_step(std::span<const double> input, int output_index, double target,
                    double learning_rate);

  const std::vector<int>& layer_dims() const { return layer_dims_; }
  int input_dim() const { return layer_dims_.front(); }
  int output_dim() const { return layer_dims_.back(); }

  // Flat parameter vector, layer by layer (weights row-major, then bias);
  // used by checkpoints and the numeric gradient checks.
  std::vector<double> parameters() const;
  void set_parameters(std::span<const double> flat);

  void save(const std::filesystem::path& path) const;
  static MlpModel load(const std::filesystem::path& path);

 private:
  struct Layer {
    Eigen::MatrixXd weights;  // out x in
    Eigen::VectorXd bias;
  };

  std::vector<int> layer_dims_;
  std::vector<Layer> layers_;
};

}  // namespace ranslice
