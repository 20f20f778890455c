// Copyright 2026 The uccvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include "uccvqe/cli.hpp"

int main(int argc, char** argv) { return uccvqe::cli::run(argc, argv); }
