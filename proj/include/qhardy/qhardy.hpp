#pragma once

#include "qhardy/core.hpp"
#include "qhardy/corpus.hpp"
#include "qhardy/lattice.hpp"
#include "qhardy/qcore.hpp"
#include "qhardy/qdiscrete.hpp"
#include "qhardy/qintegral.hpp"
#include "qhardy/qoperators.hpp"
#include "qhardy/verify.hpp"
