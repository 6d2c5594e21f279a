#pragma once

#include "andovar/colligation.hpp"
#include "andovar/dilation.hpp"
#include "andovar/errors.hpp"
#include "andovar/generators.hpp"
#include "andovar/linalg.hpp"
#include "andovar/pair_analysis.hpp"
#include "andovar/parallel.hpp"
#include "andovar/transfer.hpp"
#include "andovar/variety.hpp"
#include "andovar/vn.hpp"
