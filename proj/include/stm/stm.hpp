#ifndef STM_STM_HPP
#define STM_STM_HPP

#include "stm/bench.hpp"
#include "stm/convert.hpp"
#include "stm/distance.hpp"
#include "stm/error.hpp"
#include "stm/generate.hpp"
#include "stm/graph.hpp"
#include "stm/io.hpp"
#include "stm/matmul.hpp"
#include "stm/model_rects.hpp"
#include "stm/rect.hpp"
#include "stm/sd_degeneracy.hpp"
#include "stm/sequence.hpp"
#include "stm/tree_model.hpp"

#endif  // STM_STM_HPP
