#pragma once

#include "charsum/algebraic.hpp"
#include "charsum/character.hpp"
#include "charsum/errors.hpp"
#include "charsum/gauss.hpp"
#include "charsum/jacobi.hpp"
#include "charsum/json_io.hpp"
#include "charsum/modular.hpp"
#include "charsum/unit_group.hpp"
#include "charsum/verify.hpp"
