#pragma once
// Umbrella header: the whole library in dependency order.

#include "bng/error.hpp"
#include "bng/phase.hpp"
#include "bng/exact_sum.hpp"
#include "bng/matrix.hpp"
#include "bng/diagonal.hpp"
#include "bng/model.hpp"
#include "bng/length.hpp"
#include "bng/eig.hpp"
#include "bng/decomp.hpp"
#include "bng/su2.hpp"
#include "bng/certificate.hpp"
#include "bng/certify.hpp"
#include "bng/typeiii.hpp"
#include "bng/serialize.hpp"
#include "bng/selftest.hpp"
