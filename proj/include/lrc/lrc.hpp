#pragma once

#include "lrc/code.hpp"
#include "lrc/construct.hpp"
#include "lrc/error.hpp"
#include "lrc/gf.hpp"
#include "lrc/io.hpp"
#include "lrc/linalg.hpp"
#include "lrc/quasi_uniform.hpp"
#include "lrc/random.hpp"
#include "lrc/transforms.hpp"
