#pragma once

#include "gra/error.hpp"
#include "gra/element_set.hpp"
#include "gra/group.hpp"
#include "gra/frame.hpp"
#include "gra/frame_check.hpp"
#include "gra/oracle.hpp"
#include "gra/algebra.hpp"
#include "gra/builders.hpp"
#include "gra/frame_io.hpp"
#include "gra/verify.hpp"
