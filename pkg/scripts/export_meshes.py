"""Export the figure meshes (spinal spheres, ruled surfaces, the disk F) as OBJ files."""
import argparse
import pathlib

from chx.surfcert.mesh import export_mesh

OBJECTS = ["spinal:I0+", "spinal:I0-", "spinal:I0*", "spinal:I1+", "spinal:I-1-", "spinal:I1*",
           "ruled:EB", "ruled:EBinv", "disk:F"]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--outdir", default="meshes")
    ap.add_argument("--resolution", type=int, default=32)
    ap.add_argument("--format", choices=("obj", "ply"), default="obj")
    args = ap.parse_args()
    out = pathlib.Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    for obj in OBJECTS:
        fname = obj.replace(":", "_").replace("*", "s").replace("+", "p").replace("-", "m")
        m = export_mesh(obj, args.resolution, str(out / f"{fname}.{args.format}"), args.format)
        print(f"{obj:12s} {len(m.vertices):6d} vertices {len(m.faces):6d} faces")


if __name__ == "__main__":
    main()
