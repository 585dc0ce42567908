#pragma once

#include "ltnc/combinatorics.hpp"
#include "ltnc/degree_distribution.hpp"
#include "ltnc/encoder.hpp"
#include "ltnc/errors.hpp"
#include "ltnc/joint_degree_matrix.hpp"
#include "ltnc/packet.hpp"
#include "ltnc/peeling_decoder.hpp"
#include "ltnc/relay.hpp"
#include "ltnc/rng.hpp"
#include "ltnc/sim.hpp"
