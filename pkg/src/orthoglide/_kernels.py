"""Hot numerical kernels: frame composition, tree Newton-Euler, kinetic energy.

The functions here operate on packed float64/int64 arrays that model.py
prepares once per model, so they can be compiled with numba. Set
ORTHOGLIDE_JIT=0 in the environment to run them as plain Python instead
(much slower, occasionally handy under a debugger).

Packing conventions shared with model.py:

  mdh:     (n, 7) float64, one row per frame in tree order, columns
           gamma, b, alpha, d, theta0, r0, sigma (sigma 1.0 prismatic else 0.0)
  parents: (n,) int64, parent row index, -1 for the world
  types:   (n,) int64 joint kind: 0 revolute, 1 prismatic, 2 fixed
  inertia: (n, 13) float64 per body: mass, first moment (3), inertia tensor
           row major (9), all about the body frame

q, qd, qdd are per-frame vectors aligned with the rows; fixed frames carry
zeros there.
"""

import math
import os

import numpy as np

_JIT = os.environ.get("ORTHOGLIDE_JIT", "1").strip().lower() not in ("0", "false", "no")

if _JIT:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover
        _JIT = False

if not _JIT:  # pragma: no cover

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(func):
            return func

        return wrap


@njit(cache=True)
def chain_frames(mdh, parents, q, R, O):
    """Compose all frames of one chain; writes rotations into R (n,3,3) and
    origins into O (n,3), both expressed in the world frame."""
    n = mdh.shape[0]
    for j in range(n):
        gamma = mdh[j, 0]
        b = mdh[j, 1]
        alpha = mdh[j, 2]
        d = mdh[j, 3]
        theta = mdh[j, 4]
        r = mdh[j, 5]
        if mdh[j, 6] == 1.0:
            r = r + q[j]
        else:
            theta = theta + q[j]
        cg = math.cos(gamma)
        sg = math.sin(gamma)
        ca = math.cos(alpha)
        sa = math.sin(alpha)
        ct = math.cos(theta)
        st = math.sin(theta)
        r00 = cg * ct - sg * ca * st
        r01 = -cg * st - sg * ca * ct
        r02 = sg * sa
        r10 = sg * ct + cg * ca * st
        r11 = -sg * st + cg * ca * ct
        r12 = -cg * sa
        r20 = sa * st
        r21 = sa * ct
        r22 = ca
        px = d * cg + r * sg * sa
        py = d * sg - r * cg * sa
        pz = b + r * ca
        p = parents[j]
        if p < 0:
            R[j, 0, 0] = r00
            R[j, 0, 1] = r01
            R[j, 0, 2] = r02
            R[j, 1, 0] = r10
            R[j, 1, 1] = r11
            R[j, 1, 2] = r12
            R[j, 2, 0] = r20
            R[j, 2, 1] = r21
            R[j, 2, 2] = r22
            O[j, 0] = px
            O[j, 1] = py
            O[j, 2] = pz
        else:
            for k in range(3):
                rp0 = R[p, k, 0]
                rp1 = R[p, k, 1]
                rp2 = R[p, k, 2]
                R[j, k, 0] = rp0 * r00 + rp1 * r10 + rp2 * r20
                R[j, k, 1] = rp0 * r01 + rp1 * r11 + rp2 * r21
                R[j, k, 2] = rp0 * r02 + rp1 * r12 + rp2 * r22
                O[j, k] = O[p, k] + rp0 * px + rp1 * py + rp2 * pz


@njit(cache=True)
def tree_newton_euler(mdh, parents, types, inertia, q, qd, qdd, g, fext, gam):
    """Recursive Newton-Euler sweep over one chain tree (7 frames).

    Gravity is folded into the base acceleration (a_root = -g). fext is the
    force the chain applies to the platform, expressed in the world frame;
    its reaction acts at the origin of frame 6 (row 5). Writes the actuated
    joint efforts into gam, ordered frame 1..5 then frame 7.
    """
    n = mdh.shape[0]
    w = np.zeros((n, 3))
    wd = np.zeros((n, 3))
    v = np.zeros((n, 3))
    a = np.zeros((n, 3))
    Rl = np.zeros((n, 3, 3))
    pl = np.zeros((n, 3))
    R0 = np.zeros((n, 3, 3))
    f = np.zeros((n, 3))
    nn = np.zeros((n, 3))

    for j in range(n):
        gamma = mdh[j, 0]
        b = mdh[j, 1]
        alpha = mdh[j, 2]
        d = mdh[j, 3]
        theta = mdh[j, 4]
        r = mdh[j, 5]
        tj = types[j]
        if tj == 1:
            r = r + q[j]
        elif tj == 0:
            theta = theta + q[j]
        cg = math.cos(gamma)
        sg = math.sin(gamma)
        ca = math.cos(alpha)
        sa = math.sin(alpha)
        ct = math.cos(theta)
        st = math.sin(theta)
        r00 = cg * ct - sg * ca * st
        r01 = -cg * st - sg * ca * ct
        r02 = sg * sa
        r10 = sg * ct + cg * ca * st
        r11 = -sg * st + cg * ca * ct
        r12 = -cg * sa
        r20 = sa * st
        r21 = sa * ct
        r22 = ca
        px = d * cg + r * sg * sa
        py = d * sg - r * cg * sa
        pz = b + r * ca
        Rl[j, 0, 0] = r00
        Rl[j, 0, 1] = r01
        Rl[j, 0, 2] = r02
        Rl[j, 1, 0] = r10
        Rl[j, 1, 1] = r11
        Rl[j, 1, 2] = r12
        Rl[j, 2, 0] = r20
        Rl[j, 2, 1] = r21
        Rl[j, 2, 2] = r22
        pl[j, 0] = px
        pl[j, 1] = py
        pl[j, 2] = pz

        p = parents[j]
        if p < 0:
            wix = 0.0
            wiy = 0.0
            wiz = 0.0
            wdix = 0.0
            wdiy = 0.0
            wdiz = 0.0
            vix = 0.0
            viy = 0.0
            viz = 0.0
            aix = -g[0]
            aiy = -g[1]
            aiz = -g[2]
            for k in range(3):
                R0[j, k, 0] = Rl[j, k, 0]
                R0[j, k, 1] = Rl[j, k, 1]
                R0[j, k, 2] = Rl[j, k, 2]
        else:
            wix = w[p, 0]
            wiy = w[p, 1]
            wiz = w[p, 2]
            wdix = wd[p, 0]
            wdiy = wd[p, 1]
            wdiz = wd[p, 2]
            vix = v[p, 0]
            viy = v[p, 1]
            viz = v[p, 2]
            aix = a[p, 0]
            aiy = a[p, 1]
            aiz = a[p, 2]
            for k in range(3):
                rp0 = R0[p, k, 0]
                rp1 = R0[p, k, 1]
                rp2 = R0[p, k, 2]
                R0[j, k, 0] = rp0 * r00 + rp1 * r10 + rp2 * r20
                R0[j, k, 1] = rp0 * r01 + rp1 * r11 + rp2 * r21
                R0[j, k, 2] = rp0 * r02 + rp1 * r12 + rp2 * r22

        # parent-frame intermediates
        # c = wi x pl
        cx = wiy * pz - wiz * py
        cy = wiz * px - wix * pz
        cz = wix * py - wiy * px
        # u = wi x c
        ux = wiy * cz - wiz * cy
        uy = wiz * cx - wix * cz
        uz = wix * cy - wiy * cx
        # e = wdi x pl
        ex = wdiy * pz - wdiz * py
        ey = wdiz * px - wdix * pz
        ez = wdix * py - wdiy * px
        sax = aix + ex + ux
        say = aiy + ey + uy
        saz = aiz + ez + uz
        svx = vix + cx
        svy = viy + cy
        svz = viz + cz

        # rotate into the child frame with Rl^T
        wjx = r00 * wix + r10 * wiy + r20 * wiz
        wjy = r01 * wix + r11 * wiy + r21 * wiz
        wjz = r02 * wix + r12 * wiy + r22 * wiz
        wdjx = r00 * wdix + r10 * wdiy + r20 * wdiz
        wdjy = r01 * wdix + r11 * wdiy + r21 * wdiz
        wdjz = r02 * wdix + r12 * wdiy + r22 * wdiz
        vjx = r00 * svx + r10 * svy + r20 * svz
        vjy = r01 * svx + r11 * svy + r21 * svz
        vjz = r02 * svx + r12 * svy + r22 * svz
        ajx = r00 * sax + r10 * say + r20 * saz
        ajy = r01 * sax + r11 * say + r21 * saz
        ajz = r02 * sax + r12 * say + r22 * saz

        if tj == 0:
            # revolute about local z
            qdj = qd[j]
            wdjx += wjy * qdj
            wdjy += -wjx * qdj
            wdjz += qdd[j]
            wjz += qdj
        elif tj == 1:
            # prismatic along local z
            qdj = qd[j]
            ajx += 2.0 * wjy * qdj
            ajy += -2.0 * wjx * qdj
            ajz += qdd[j]
            vjz += qdj

        w[j, 0] = wjx
        w[j, 1] = wjy
        w[j, 2] = wjz
        wd[j, 0] = wdjx
        wd[j, 1] = wdjy
        wd[j, 2] = wdjz
        v[j, 0] = vjx
        v[j, 1] = vjy
        v[j, 2] = vjz
        a[j, 0] = ajx
        a[j, 1] = ajy
        a[j, 2] = ajz

    for j in range(n - 1, -1, -1):
        M = inertia[j, 0]
        msx = inertia[j, 1]
        msy = inertia[j, 2]
        msz = inertia[j, 3]
        J00 = inertia[j, 4]
        J01 = inertia[j, 5]
        J02 = inertia[j, 6]
        J10 = inertia[j, 7]
        J11 = inertia[j, 8]
        J12 = inertia[j, 9]
        J20 = inertia[j, 10]
        J21 = inertia[j, 11]
        J22 = inertia[j, 12]
        wx = w[j, 0]
        wy = w[j, 1]
        wz = w[j, 2]
        wdx = wd[j, 0]
        wdy = wd[j, 1]
        wdz = wd[j, 2]
        ax = a[j, 0]
        ay = a[j, 1]
        az = a[j, 2]

        # F = M a + wd x ms + w x (w x ms)
        t1x = wdy * msz - wdz * msy
        t1y = wdz * msx - wdx * msz
        t1z = wdx * msy - wdy * msx
        t2x = wy * msz - wz * msy
        t2y = wz * msx - wx * msz
        t2z = wx * msy - wy * msx
        t3x = wy * t2z - wz * t2y
        t3y = wz * t2x - wx * t2z
        t3z = wx * t2y - wy * t2x
        Fx = M * ax + t1x + t3x
        Fy = M * ay + t1y + t3y
        Fz = M * az + t1z + t3z

        # N = J wd + w x (J w) + ms x a
        Jwx = J00 * wx + J01 * wy + J02 * wz
        Jwy = J10 * wx + J11 * wy + J12 * wz
        Jwz = J20 * wx + J21 * wy + J22 * wz
        Jwdx = J00 * wdx + J01 * wdy + J02 * wdz
        Jwdy = J10 * wdx + J11 * wdy + J12 * wdz
        Jwdz = J20 * wdx + J21 * wdy + J22 * wdz
        Nx = Jwdx + wy * Jwz - wz * Jwy + msy * az - msz * ay
        Ny = Jwdy + wz * Jwx - wx * Jwz + msz * ax - msx * az
        Nz = Jwdz + wx * Jwy - wy * Jwx + msx * ay - msy * ax

        f[j, 0] += Fx
        f[j, 1] += Fy
        f[j, 2] += Fz
        nn[j, 0] += Nx
        nn[j, 1] += Ny
        nn[j, 2] += Nz

        if j == 5:
            # reaction of the platform force, applied at the frame-6 origin
            f[j, 0] += R0[j, 0, 0] * fext[0] + R0[j, 1, 0] * fext[1] + R0[j, 2, 0] * fext[2]
            f[j, 1] += R0[j, 0, 1] * fext[0] + R0[j, 1, 1] * fext[1] + R0[j, 2, 1] * fext[2]
            f[j, 2] += R0[j, 0, 2] * fext[0] + R0[j, 1, 2] * fext[1] + R0[j, 2, 2] * fext[2]

        p = parents[j]
        if p >= 0:
            ffx = Rl[j, 0, 0] * f[j, 0] + Rl[j, 0, 1] * f[j, 1] + Rl[j, 0, 2] * f[j, 2]
            ffy = Rl[j, 1, 0] * f[j, 0] + Rl[j, 1, 1] * f[j, 1] + Rl[j, 1, 2] * f[j, 2]
            ffz = Rl[j, 2, 0] * f[j, 0] + Rl[j, 2, 1] * f[j, 1] + Rl[j, 2, 2] * f[j, 2]
            nnx = Rl[j, 0, 0] * nn[j, 0] + Rl[j, 0, 1] * nn[j, 1] + Rl[j, 0, 2] * nn[j, 2]
            nny = Rl[j, 1, 0] * nn[j, 0] + Rl[j, 1, 1] * nn[j, 1] + Rl[j, 1, 2] * nn[j, 2]
            nnz = Rl[j, 2, 0] * nn[j, 0] + Rl[j, 2, 1] * nn[j, 1] + Rl[j, 2, 2] * nn[j, 2]
            f[p, 0] += ffx
            f[p, 1] += ffy
            f[p, 2] += ffz
            nn[p, 0] += nnx + pl[j, 1] * ffz - pl[j, 2] * ffy
            nn[p, 1] += nny + pl[j, 2] * ffx - pl[j, 0] * ffz
            nn[p, 2] += nnz + pl[j, 0] * ffy - pl[j, 1] * ffx

        tj = types[j]
        if tj == 2:
            continue
        slot = j if j < 5 else 5
        if tj == 0:
            gam[slot] = nn[j, 2]
        else:
            gam[slot] = f[j, 2]


@njit(cache=True)
def chain_kinetic(mdh, parents, types, inertia, q, qd):
    """Kinetic energy of one chain tree via the velocity recursion."""
    n = mdh.shape[0]
    w = np.zeros((n, 3))
    v = np.zeros((n, 3))
    T = 0.0
    for j in range(n):
        gamma = mdh[j, 0]
        b = mdh[j, 1]
        alpha = mdh[j, 2]
        d = mdh[j, 3]
        theta = mdh[j, 4]
        r = mdh[j, 5]
        tj = types[j]
        if tj == 1:
            r = r + q[j]
        elif tj == 0:
            theta = theta + q[j]
        cg = math.cos(gamma)
        sg = math.sin(gamma)
        ca = math.cos(alpha)
        sa = math.sin(alpha)
        ct = math.cos(theta)
        st = math.sin(theta)
        r00 = cg * ct - sg * ca * st
        r01 = -cg * st - sg * ca * ct
        r02 = sg * sa
        r10 = sg * ct + cg * ca * st
        r11 = -sg * st + cg * ca * ct
        r12 = -cg * sa
        r20 = sa * st
        r21 = sa * ct
        r22 = ca
        px = d * cg + r * sg * sa
        py = d * sg - r * cg * sa
        pz = b + r * ca

        p = parents[j]
        if p < 0:
            wix = 0.0
            wiy = 0.0
            wiz = 0.0
            svx = 0.0
            svy = 0.0
            svz = 0.0
        else:
            wix = w[p, 0]
            wiy = w[p, 1]
            wiz = w[p, 2]
            svx = v[p, 0] + wiy * pz - wiz * py
            svy = v[p, 1] + wiz * px - wix * pz
            svz = v[p, 2] + wix * py - wiy * px

        wjx = r00 * wix + r10 * wiy + r20 * wiz
        wjy = r01 * wix + r11 * wiy + r21 * wiz
        wjz = r02 * wix + r12 * wiy + r22 * wiz
        vjx = r00 * svx + r10 * svy + r20 * svz
        vjy = r01 * svx + r11 * svy + r21 * svz
        vjz = r02 * svx + r12 * svy + r22 * svz
        if tj == 0:
            wjz += qd[j]
        elif tj == 1:
            vjz += qd[j]
        w[j, 0] = wjx
        w[j, 1] = wjy
        w[j, 2] = wjz
        v[j, 0] = vjx
        v[j, 1] = vjy
        v[j, 2] = vjz

        M = inertia[j, 0]
        msx = inertia[j, 1]
        msy = inertia[j, 2]
        msz = inertia[j, 3]
        J00 = inertia[j, 4]
        J01 = inertia[j, 5]
        J02 = inertia[j, 6]
        J10 = inertia[j, 7]
        J11 = inertia[j, 8]
        J12 = inertia[j, 9]
        J20 = inertia[j, 10]
        J21 = inertia[j, 11]
        J22 = inertia[j, 12]
        Jwx = J00 * wjx + J01 * wjy + J02 * wjz
        Jwy = J10 * wjx + J11 * wjy + J12 * wjz
        Jwz = J20 * wjx + J21 * wjy + J22 * wjz
        # v x w
        vwx = vjy * wjz - vjz * wjy
        vwy = vjz * wjx - vjx * wjz
        vwz = vjx * wjy - vjy * wjx
        T += 0.5 * M * (vjx * vjx + vjy * vjy + vjz * vjz)
        T += 0.5 * (wjx * Jwx + wjy * Jwy + wjz * Jwz)
        T += msx * vwx + msy * vwy + msz * vwz
    return T


JIT_ENABLED = _JIT
