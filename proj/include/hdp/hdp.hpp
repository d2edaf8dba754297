#pragma once

#include "hdp/grammar.hpp"
#include "hdp/hg_format.hpp"
#include "hdp/transform.hpp"
#include "hdp/engine.hpp"
#include "hdp/oriented.hpp"
#include "hdp/dotted.hpp"
#include "hdp/td.hpp"
#include "hdp/hc.hpp"
#include "hdp/phi.hpp"
#include "hdp/ehi.hpp"
#include "hdp/hi.hpp"
#include "hdp/ghi.hpp"
#include "hdp/oracle.hpp"
#include "hdp/random_grammar.hpp"
#include "hdp/report.hpp"
