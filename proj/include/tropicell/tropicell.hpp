#pragma once

#include "tropicell/arith.hpp"
#include "tropicell/errors.hpp"
#include "tropicell/exact_linalg.hpp"
#include "tropicell/families.hpp"
#include "tropicell/homotopy.hpp"
#include "tropicell/io.hpp"
#include "tropicell/mixed_cell.hpp"
#include "tropicell/mixed_cells.hpp"
#include "tropicell/oracle.hpp"
#include "tropicell/solver.hpp"
#include "tropicell/strategies.hpp"
#include "tropicell/support_config.hpp"
#include "tropicell/term_order.hpp"
