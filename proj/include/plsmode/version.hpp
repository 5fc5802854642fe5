#pragma once

#define PLSMODE_VERSION "0.1.0"
