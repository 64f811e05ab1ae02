#!/usr/bin/env python3
"""Writes tests/data/ref_2x2x2x3.nii, a little-endian single-file NIfTI-1
volume assembled field-by-field from the published header layout
(https://nifti.nimh.nih.gov/pub/dist/src/niftilib/nifti1.h), independent of
the C++ reader under test.

dim = (4, 2, 2, 2, 3), float32, pixdim 1.25 mm isotropic, data = 0..23.
"""

import struct

OUT = "tests/data/ref_2x2x2x3.nii"

hdr = bytearray(348)
struct.pack_into("<i", hdr, 0, 348)                      # sizeof_hdr
struct.pack_into("<8h", hdr, 40, 4, 2, 2, 2, 3, 1, 1, 1)  # dim
struct.pack_into("<h", hdr, 70, 16)                      # datatype = FLOAT32
struct.pack_into("<h", hdr, 72, 32)                      # bitpix
struct.pack_into("<8f", hdr, 76, 1.0, 1.25, 1.25, 1.25, 0, 0, 0, 0)  # pixdim
struct.pack_into("<f", hdr, 108, 352.0)                  # vox_offset
struct.pack_into("<f", hdr, 112, 0.0)                    # scl_slope (none)
struct.pack_into("<f", hdr, 116, 0.0)                    # scl_inter
hdr[344:348] = b"n+1\x00"                                # magic

body = bytes(4)  # extender: no extensions
data = struct.pack("<24f", *range(24))

with open(OUT, "wb") as f:
    f.write(bytes(hdr) + body + data)
print(f"wrote {OUT} ({348 + 4 + len(data)} bytes)")
