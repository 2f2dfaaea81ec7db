#pragma once

#include "ebk/construct.hpp"
#include "ebk/cyclic.hpp"
#include "ebk/errors.hpp"
#include "ebk/isometry.hpp"
#include "ebk/matrix.hpp"
#include "ebk/multipartite.hpp"
#include "ebk/serialize.hpp"
#include "ebk/state.hpp"
#include "ebk/svd.hpp"
#include "ebk/tiling.hpp"
#include "ebk/verify.hpp"
#include "ebk/weyl.hpp"
