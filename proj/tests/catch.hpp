// Copyright 2026 The uccvqe Authors
// SPDX-License-Identifier: Apache-2.0

// Ceres pulls in glog, whose CHECK macro would shadow Catch's.
#pragma once

#include <ceres/ceres.h>

#undef CHECK

#include <catch_amalgamated.hpp>
