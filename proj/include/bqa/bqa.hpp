#pragma once

#include "bqa/algebra.hpp"
#include "bqa/assignments.hpp"
#include "bqa/complexes.hpp"
#include "bqa/endo.hpp"
#include "bqa/expr.hpp"
#include "bqa/linalg.hpp"
#include "bqa/parallel.hpp"
#include "bqa/presentation.hpp"
#include "bqa/quiver.hpp"
#include "bqa/scalar.hpp"
#include "bqa/symmetric.hpp"
#include "bqa/tilting.hpp"
