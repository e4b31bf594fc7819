#pragma once

#include <string>
#include <vector>

#include "common.hpp"

namespace billiards::app {

struct CausticsOptions {
  std::vector<unsigned> n_list;  ///< one report per n
  std::string a = "2";
  std::string b = "1";
  bool check_poncelet = false;
  bool closed_form = false;
  int starts = 10;
};
int run_caustics(const CausticsOptions& opt, const AppConfig& cfg);

struct OrbitOptions {
  std::string scene_path;
  std::string start;  ///< "x,y[,z]" (empty when theta is used)
  double theta = 0.0;
  double phi = 0.0;
  bool has_theta = false;
  bool has_phi = false;
  std::string dir;  ///< "dx,dy[,dz]"
  int steps = 50;
};
int run_orbit(const OrbitOptions& opt, const AppConfig& cfg);

struct PolygonOptions {
  std::string kind;  ///< right-spherical | cp-quadrilateral | cp-regular-2m | cp-odd-n
  int samples = 1000;
  int m = 3;  ///< half the vertex count for cp-regular-2m
  int n = 5;  ///< vertex count for cp-odd-n
};
int run_polygon(const PolygonOptions& opt, const AppConfig& cfg);

struct CircumcentersOptions {
  std::string a = "2";
  std::string b = "1";
  int orbits = 200;
};
int run_circumcenters(const CircumcentersOptions& opt, const AppConfig& cfg);

struct ChaslesOptions {
  std::string signature = "1,1";  ///< "k,l"
  std::string a = "2";
  std::string b = "1";
  std::string axes;  ///< optional "a,b,c" overriding -a/-b
  int bounces = 50;
  double theta0 = 0.3;
  double theta1 = 1.1;
  double phi0 = 0.4;
  double phi1 = 1.0;
};
int run_chasles(const ChaslesOptions& opt, const AppConfig& cfg);

struct PermittedOptions {
  std::string ellipsoid = "3,2,1";  ///< squared semi-axes
  int samples = 200;
  double ratio = 0.7;  ///< tangential/normal weight of the frame-line direction
};
int run_permitted(const PermittedOptions& opt, const AppConfig& cfg);

}  // namespace billiards::app
