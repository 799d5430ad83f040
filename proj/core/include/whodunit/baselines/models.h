// Copyright 2026 The Whodunit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WHODUNIT_BASELINES_MODELS_H_
#define WHODUNIT_BASELINES_MODELS_H_

#include <filesystem>
#include <memory>
#include <string_view>

#include <Eigen/Core>

#include "whodunit/nn/checkpoint.h"
#include "whodunit/nn/labeler.h"
#include "whodunit/nn/model_config.h"

namespace whodunit::baselines {

// Builds an untrained labeler of kind "lstm", "mlp" or "crf". For the neural
// taggers `embeddings` seeds the trainable table (may be null); the CRF
// requires it and keeps it frozen.
std::unique_ptr<nn::SequenceLabeler> MakeLabeler(std::string_view kind,
                                                 const nn::ModelConfig& config,
                                                 const Eigen::MatrixXd* embeddings);

// Checkpoint of the labeler's current parameters. The config echo holds the
// kind, the model config and `extra` entries.
nn::Checkpoint SnapshotLabeler(const nn::SequenceLabeler& model,
                               const std::map<std::string, std::string>& extra = {});
nn::Checkpoint SnapshotParams(const nn::SequenceLabeler& model, const nn::ParamSet& params,
                              const std::map<std::string, std::string>& extra = {});

// Rebuilds a labeler from a checkpoint. CRF checkpoints need the frozen
// embedding table they were trained with.
std::unique_ptr<nn::SequenceLabeler> LoadLabeler(const nn::Checkpoint& checkpoint,
                                                 const Eigen::MatrixXd* embeddings);

}  // namespace whodunit::baselines

#endif  // WHODUNIT_BASELINES_MODELS_H_
