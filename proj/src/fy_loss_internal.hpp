/* Copyright 2026 The entmax Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <cstddef>

#include "entmax/types.hpp"

namespace entmax::detail {

// Fenchel-Young loss generated by t * (-H_alpha) with a one-hot target.
// Only used to check the temperature-scaling identity.
double entmax_loss_scaled_regularizer(const ScoreVector& z, std::size_t y,
                                      Alpha alpha, double t);

}  // namespace entmax::detail
