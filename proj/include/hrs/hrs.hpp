#ifndef HRS_HRS_HPP
#define HRS_HRS_HPP

#include "hrs/core.hpp"
#include "hrs/verify.hpp"
#include "hrs/partition.hpp"
#include "hrs/solver.hpp"
#include "hrs/smti.hpp"
#include "hrs/oracle.hpp"
#include "hrs/reduce.hpp"
#include "hrs/json_io.hpp"
#include "hrs/harness.hpp"

#endif
