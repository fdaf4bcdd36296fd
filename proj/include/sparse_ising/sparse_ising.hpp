#pragma once

#include "sparse_ising/error.hpp"
#include "sparse_ising/fetch.hpp"
#include "sparse_ising/instance.hpp"
#include "sparse_ising/metrics.hpp"
#include "sparse_ising/model.hpp"
#include "sparse_ising/published.hpp"
#include "sparse_ising/report.hpp"
#include "sparse_ising/rng.hpp"
#include "sparse_ising/solvers.hpp"
#include "sparse_ising/verify.hpp"
