#pragma once

#include "kmc/acceptance.hpp"
#include "kmc/assembly.hpp"
#include "kmc/cartan.hpp"
#include "kmc/field.hpp"
#include "kmc/fixtures.hpp"
#include "kmc/graded_subspace.hpp"
#include "kmc/invariants.hpp"
#include "kmc/lattice_expr.hpp"
#include "kmc/report.hpp"
#include "kmc/ring_structure.hpp"
#include "kmc/series.hpp"
#include "kmc/torsion.hpp"
#include "kmc/weyl.hpp"
#include "kmc/worked_example.hpp"
