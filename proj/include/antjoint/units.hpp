#pragma once

// Internal unit conventions used throughout the library:
//   force        N
//   length       mm (actuator-level), cm only at config/report surfaces
//   stiffness    N/mm
//   angle        rad
//   torque       N*m
//   time         s (milliseconds only at config surfaces)
//   HASEL drive  kV, clutch drive V

namespace antjoint {

inline constexpr double kGravity = 9.81;          // m/s^2, also N per kgf
inline constexpr double kCmToMm = 10.0;
inline constexpr double kMmToM = 1e-3;
inline constexpr double kKpaToNPerCm2 = 0.1;      // 1 kPa = 0.1 N/cm^2
inline constexpr double kMsToS = 1e-3;

inline constexpr double kPi = 3.14159265358979323846;

inline constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

}  // namespace antjoint
