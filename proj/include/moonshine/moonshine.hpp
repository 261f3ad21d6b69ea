#pragma once

#include "moonshine/classdata.hpp"
#include "moonshine/cliffordcm.hpp"
#include "moonshine/cyclotomic.hpp"
#include "moonshine/error.hpp"
#include "moonshine/fockoracle.hpp"
#include "moonshine/frameshape.hpp"
#include "moonshine/io.hpp"
#include "moonshine/lattice.hpp"
#include "moonshine/modgroups.hpp"
#include "moonshine/parallel.hpp"
#include "moonshine/qseries.hpp"
#include "moonshine/rational.hpp"
#include "moonshine/traces.hpp"
