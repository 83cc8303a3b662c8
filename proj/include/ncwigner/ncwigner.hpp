#pragma once

// Umbrella header for the library (everything except the command-line front end).

#include "ncwigner/dynamics.hpp"
#include "ncwigner/error.hpp"
#include "ncwigner/information.hpp"
#include "ncwigner/io.hpp"
#include "ncwigner/optimize.hpp"
#include "ncwigner/parallel.hpp"
#include "ncwigner/params.hpp"
#include "ncwigner/special.hpp"
#include "ncwigner/thermo.hpp"
#include "ncwigner/wigner.hpp"
#include "ncwigner/zeeman.hpp"
