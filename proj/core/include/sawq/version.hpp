#pragma once

#define SAWQ_VERSION "0.1.0"
