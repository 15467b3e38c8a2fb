#pragma once

#include "zhuforge/rational.hpp"
#include "zhuforge/errors.hpp"
#include "zhuforge/sparse.hpp"
#include "zhuforge/matrix.hpp"
#include "zhuforge/report.hpp"
#include "zhuforge/parallel.hpp"
#include "zhuforge/voa.hpp"
#include "zhuforge/free_field.hpp"
#include "zhuforge/axioms.hpp"
#include "zhuforge/zhu.hpp"
#include "zhuforge/tensor.hpp"
#include "zhuforge/assoc.hpp"
#include "zhuforge/assoc_rep.hpp"
#include "zhuforge/random_algebra.hpp"
#include "zhuforge/bimodule.hpp"
#include "zhuforge/faults.hpp"
#include "zhuforge/io.hpp"
#include "zhuforge/suites.hpp"
