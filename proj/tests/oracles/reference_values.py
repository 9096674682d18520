# Independent numpy reference for the frozen values used in the C++ tests.
# Permutations are applied with ndarray reshape/transpose, not index maps.
# Run: python3 tests/oracles/reference_values.py
import numpy as np, itertools
def permute(rho, dims, sigma):
    N=len(dims); T=rho.reshape(dims+dims)  # axes: k1..kN, b1..bN
    inv=[0]*(2*N)
    for p,t in enumerate(sigma): inv[t]=p
    A=np.transpose(T, inv)  # target axis q = source axis inv[q]
    sd=[(dims+dims)[inv[q]] for q in range(2*N)]
    return A.reshape(int(np.prod(sd[:N])), int(np.prod(sd[N:])))
def tn(M): return np.linalg.svd(M, compute_uv=False).sum()
def ghz(N):
    v=np.zeros(2**N); v[0]=v[-1]=1/np.sqrt(2); return np.outer(v,v)
def w(N):
    v=np.zeros(2**N)
    for k in range(N): v[1<<k]=1
    v/=np.linalg.norm(v); return np.outer(v,v)
bell=np.zeros((4,4)); 
for i in [0,3]:
    for j in [0,3]: bell[i,j]=.5
print("bell eig PT2", np.linalg.eigvalsh(permute(bell,[2,2],[0,3,2,1])))
# realign N=2 rows (b1,k1) cols (b2,k2): sigma: k1->1,k2->3,b1->0,b2->2
print("bell realign", tn(permute(bell,[2,2],[1,3,0,2])))
print("I/4 realign", tn(permute(np.eye(4)/4,[2,2],[1,3,0,2])))
def onside(N,j,k,l):
    s=list(range(2*N)); s[N+j-1],s[N+k-1]=s[N+k-1],s[N+j-1]
    t=list(range(2*N)); t[l-1],t[N+l-1]=t[N+l-1],t[l-1]
    return [t[x] for x in s]
for (j,k,l) in [(1,2,1),(1,2,2),(1,3,1),(1,3,3),(2,3,2),(2,3,3)]:
    print("GHZ one-side",(j,k,l), repr(tn(permute(ghz(3),[2,2,2],onside(3,j,k,l)))), " W:", repr(tn(permute(w(3),[2,2,2],onside(3,j,k,l)))))
for T in [[1],[2],[3]]:
    s=list(range(6))
    for t in T: s[t-1],s[3+t-1]=s[3+t-1],s[t-1]
    print("GHZ PT",T, repr(tn(permute(ghz(3),[2,2,2],s))), "W PT", repr(tn(permute(w(3),[2,2,2],s))))
# Werner PT min eigen
for p in [0.30,0.33,0.34,0.40,1.0]:
    sing=np.array([0,1,-1,0])/np.sqrt(2); rho=p*np.outer(sing,sing)+(1-p)*np.eye(4)/4
    print("werner",p, np.linalg.eigvalsh(permute(rho,[2,2],[0,3,2,1])).min(), tn(permute(rho,[2,2],[0,3,2,1])))
# classes brute force
for N in [1,2,3,4]:
    full=(1<<2*N)-1; cnt={}
    for perm in itertools.permutations(range(2*N)):
        m=sum(1<<p for p,t in enumerate(perm) if t<N); key=min(m, full^m)
        cnt[key]=cnt.get(key,0)+1
    print("N",N,"classes",len(cnt),"pops",sorted(set(cnt.values())))
# spectral grouping of all 720 tripartite permutations, density vs general inputs
rng=np.random.default_rng(1729)
for kind in ["density","general"]:
    samples=[]
    for _ in range(5):
        G=rng.normal(size=(8,8))+1j*rng.normal(size=(8,8))
        M=G@G.conj().T if kind=="density" else G
        samples.append(M/(np.trace(M) if kind=="density" else np.linalg.norm(M)))
    groups=[]
    for perm in itertools.permutations(range(6)):
        key=np.concatenate([np.linalg.svd(permute(S,[2,2,2],list(perm)),compute_uv=False) for S in samples])
        if not any(np.max(np.abs(key-g))<=1e-8 for g in groups): groups.append(key)
    print("N 3",kind,"groups",len(groups))
