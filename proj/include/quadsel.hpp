#pragma once

#include "quadsel/arith.hpp"
#include "quadsel/bit_matrix.hpp"
#include "quadsel/field.hpp"
#include "quadsel/units.hpp"
#include "quadsel/ideals.hpp"
#include "quadsel/forms.hpp"
#include "quadsel/abelian_group.hpp"
#include "quadsel/classgroups.hpp"
#include "quadsel/prime_stream.hpp"
#include "quadsel/selmer.hpp"
#include "quadsel/symbols.hpp"
#include "quadsel/verify.hpp"
