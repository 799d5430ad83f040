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

#include "whodunit/baselines/models.h"

#include <optional>

#include "whodunit/baselines/crf.h"
#include "whodunit/baselines/mlp_tagger.h"
#include "whodunit/error.h"
#include "whodunit/nn/lstm_tagger.h"

namespace whodunit::baselines {

std::unique_ptr<nn::SequenceLabeler> MakeLabeler(std::string_view kind,
                                                 const nn::ModelConfig& config,
                                                 const Eigen::MatrixXd* embeddings) {
  std::optional<Eigen::MatrixXd> table;
  if (embeddings != nullptr) table = *embeddings;
  if (kind == "lstm") return std::make_unique<nn::LstmTagger>(config, std::move(table));
  if (kind == "mlp") return std::make_unique<MlpTagger>(config, std::move(table));
  if (kind == "crf") {
    if (!table) throw Error("the CRF needs an embedding table");
    return std::make_unique<CrfTagger>(config, std::move(*table));
  }
  throw ConfigError("unknown model kind '" + std::string(kind) + "'");
}

nn::Checkpoint SnapshotParams(const nn::SequenceLabeler& model, const nn::ParamSet& params,
                              const std::map<std::string, std::string>& extra) {
  nn::Checkpoint cp;
  cp.config = model.config().ToKeyValues();
  for (const auto& [k, v] : extra) cp.config[k] = v;
  cp.config["kind"] = std::string(model.kind());
  cp.params = params;
  return cp;
}

nn::Checkpoint SnapshotLabeler(const nn::SequenceLabeler& model,
                               const std::map<std::string, std::string>& extra) {
  return SnapshotParams(model, model.params(), extra);
}

std::unique_ptr<nn::SequenceLabeler> LoadLabeler(const nn::Checkpoint& checkpoint,
                                                 const Eigen::MatrixXd* embeddings) {
  auto kind = checkpoint.config.find("kind");
  if (kind == checkpoint.config.end()) throw Error("checkpoint does not record a model kind");
  const nn::ModelConfig config = nn::ModelConfig::FromKeyValues(checkpoint.config);
  auto model = MakeLabeler(kind->second, config, kind->second == "crf" ? embeddings : nullptr);
  nn::CopyParams(checkpoint.params, &model->params());
  return model;
}

}  // namespace whodunit::baselines
