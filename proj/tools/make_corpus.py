#!/usr/bin/env python3
# Copyright 2026 The approxjpeg Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates tests/data from sample images bundled with scikit-image and PyWavelets.

The output is committed, so this only needs to run when the corpus changes.
"""

import argparse
import pathlib

import numpy as np
import pywt.data
import skimage.data as data
import skimage.transform as transform


def to_gray(rgb):
    rgb = rgb[..., :3].astype(np.float64)
    y = 0.299 * rgb[..., 0] + 0.587 * rgb[..., 1] + 0.114 * rgb[..., 2]
    return np.clip(np.floor(y + 0.5), 0, 255).astype(np.uint8)


def center_crop(img, h, w):
    top = (img.shape[0] - h) // 2
    left = (img.shape[1] - w) // 2
    return img[top:top + h, left:left + w]


def resize_gray(img, h, w):
    out = transform.resize(img, (h, w), anti_aliasing=True, preserve_range=True)
    return np.clip(np.floor(out + 0.5), 0, 255).astype(np.uint8)


def write_pnm(path, img):
    if img.ndim == 2:
        header = f"P5\n{img.shape[1]} {img.shape[0]}\n255\n"
    else:
        header = f"P6\n{img.shape[1]} {img.shape[0]}\n255\n"
    path.write_bytes(header.encode("ascii") + np.ascontiguousarray(img).tobytes())


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parents[1] / "tests" / "data"))
    args = parser.parse_args()
    out = pathlib.Path(args.out)
    classic = out / "corpus" / "classic"
    extra = out / "corpus" / "extra"
    color = out / "color"
    for d in (classic, extra, color):
        d.mkdir(parents=True, exist_ok=True)

    # 512x512 grayscale photographs and textures
    classic_images = {
        "aero": pywt.data.aero(),
        "ascent": pywt.data.ascent(),
        "astronaut": to_gray(data.astronaut()),
        "brick": data.brick(),
        "camera": data.camera(),
        "grass": data.grass(),
        "gravel": data.gravel(),
    }
    # scientific imagery at 512x512 and other photographs at native size
    extra_images = {
        "hubble": center_crop(to_gray(data.hubble_deep_field()), 512, 512),
        "immunohistochemistry": to_gray(data.immunohistochemistry()),
        "moon": data.moon(),
        "retina": resize_gray(to_gray(data.retina()), 512, 512),
        "chelsea": to_gray(data.chelsea()),
        "clock": data.clock(),
        "coffee": to_gray(data.coffee()),
        "coins": data.coins(),
        "rocket": to_gray(data.rocket()),
    }
    for name, img in classic_images.items():
        write_pnm(classic / f"{name}.pgm", img)
    for name, img in extra_images.items():
        write_pnm(extra / f"{name}.pgm", img)

    write_pnm(color / "astronaut.ppm", data.astronaut())
    write_pnm(color / "chelsea.ppm", data.chelsea())


if __name__ == "__main__":
    main()
