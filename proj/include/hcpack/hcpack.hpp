#pragma once

#include "hcpack/bounds.hpp"
#include "hcpack/catalog.hpp"
#include "hcpack/configuration.hpp"
#include "hcpack/criticality.hpp"
#include "hcpack/entropy.hpp"
#include "hcpack/error.hpp"
#include "hcpack/growth.hpp"
#include "hcpack/lattice.hpp"
#include "hcpack/lattice_io.hpp"
#include "hcpack/moves.hpp"
#include "hcpack/oracle.hpp"
#include "hcpack/order_parameter.hpp"
#include "hcpack/pca.hpp"
#include "hcpack/periodic_graph.hpp"
#include "hcpack/philox.hpp"
#include "hcpack/rational.hpp"
#include "hcpack/snapshot.hpp"
#include "hcpack/trace_io.hpp"
#include "hcpack/voter.hpp"
