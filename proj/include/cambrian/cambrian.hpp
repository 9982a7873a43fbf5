#pragma once

#include "cambrian/congruence.hpp"
#include "cambrian/coxeter.hpp"
#include "cambrian/errors.hpp"
#include "cambrian/group_spec.hpp"
#include "cambrian/io.hpp"
#include "cambrian/projections.hpp"
#include "cambrian/sortable.hpp"
#include "cambrian/weak_order.hpp"
#include "cambrian/verify.hpp"
