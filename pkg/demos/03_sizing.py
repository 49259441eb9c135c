"""How large must a surface be to match specular reflection?

In the far case the focused path gain depends on the physical area only,
(A / (4 pi r_i r_s))^2, the same as a flat conducting plate. Setting it equal
to a free-space path of length r_i + r_s gives A = f_e lambda for broadside
links, where f_e = r_i r_s / (r_i + r_s).
"""

from ris_pathloss.experiments import format_csv, make_tables, TABLE_COLUMNS
from ris_pathloss.farfield import (
    effective_focal_length,
    far_path_loss_area,
    plate_path_loss,
    plate_rcs,
    radar_range_power,
    required_side,
)

a, r_i, r_s, lam = 1.0, 100.0, 100.0, 0.1
print(f"area form {far_path_loss_area(a, r_i, r_s):.6e}  plate {plate_path_loss(a, r_i, r_s):.6e}")
print(f"radar equation with sigma = 4 pi A^2 / lambda^2: "
      f"{radar_range_power(1, 1, 1, lam, plate_rcs(a, lam), r_i, r_s):.6e}")

# The shorter leg dominates: a surface near one terminal can be small.
for r_i, r_s in ((1000.0, 1000.0), (50.0, 1000.0), (5.0, 1000.0)):
    f_e = effective_focal_length(r_i, r_s)
    side, side_lam = required_side(f_e, 0.0107)
    print(f"r_i = {r_i:6.0f} m  r_s = {r_s:6.0f} m  f_e = {f_e:7.2f} m  side {side:5.2f} m ({side_lam:6.1f} lambda)")

# Full sizing table for the oblique, half-efficiency case.
print(format_csv(make_tables("typical"), TABLE_COLUMNS))
