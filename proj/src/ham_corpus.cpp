#include "miniweave/ham_corpus.hpp"

#include <fstream>

#include "miniweave/errors.hpp"

namespace miniweave {

std::string build_ham_corpus() {
  return R"lw(@* Hamiltonian circuits.
This program counts the Hamiltonian circuits of an undirected graph,
that is, the cycles that pass through every vertex exactly once. The
graph comes from the Stanford GraphBase, in a file previously saved
by a companion utility; the function |restore_graph| brings it back
into memory. A circuit and its reversal are counted as one. The
method is straightforward backtracking, sped up by watching the
degrees of the vertices that remain untaken; the details appear
below.

@c
#include "gb_graph.h" /* the GraphBase data structures */
#include "gb_save.h" /* |restore_graph| */

@ We use utility field |u| of each vertex to hold its degree, accessed
via the macro |deg| defined here.

@-deg@>
@$deg {ham}2 =\|u.\|I@>
@%@$u {GB_GRAPH}9 \&{util}@>

@d deg u.I
@c
int main(argc,argv)
int argc;
char *argv[];
{ register Vertex *t,*u,*v,*y;
  register Arc *a;
  Graph *g;
  long count=0;
  @<Input the graph@>;
  @<Prepare the graph for backtracking@>;
  @<Find and count all Hamiltonian circuits@>;
  return 0;
}

@ If no file name is given on the command line, we try a default
file, |"ham.gb"|.

@<Input the graph@>=
g=restore_graph(argc>1? argv[1]: "ham.gb");
if (g==NULL) {
  printf("Sorry, I couldn't restore the graph!\n");
  return -1;
}

@ Utility field |v| marks the vertices already on the path. The macro
|not_taken| tests whether a vertex is still free.

@-taken@>
@$taken {ham}4 =\|v.\|I@>
@%@$v {GB_GRAPH}9 \&{util}@>
 @$v {ham}2 \&{register} \&{Vertex} $*$@>

@d taken v.I
@d not_taken(v) ((v)->taken==0)
@<Prepare the graph for backtracking@>=
for (v=g->vertices;v<g->vertices+g->n;v++) {
  register int d=0;
  for (a=v->arcs;a;a=a->next) d++;
  v->deg=d; v->taken=0;
}

@ A vertex of degree less than two can never lie on a circuit, so we
can quit early in that case.

@<Find and count all Hamiltonian circuits@>=
for (v=g->vertices;v<g->vertices+g->n;v++)
  if (v->deg<2) {
    printf("The minimum degree is less than two!\n");
    return 0;
  }
@<Initialize the search@>;
@<Run through all the circuits@>;

@ The search starts a path at vertex 0 and will extend it until every
vertex is taken. Utility field |w| holds each vertex's predecessor
|vert| on the path; utility field |x| holds |ark|, the arc most
recently tried from it. We take vertex 0 now, reducing the degrees
of its |k| neighbors, and let |t| point to it.

@-k@> @-t@> @-vert@> @-ark@>
@$vert {ham}6 =\|w.\|V@>
@$ark {ham}6 =\|x.\|A@>
@%@$w {GB_GRAPH}9 \&{util}@>
  @$x {GB_GRAPH}9 \&{util}@>

@d vert w.V
@d ark x.A
@<Initialize the search@>=
for (y=g->vertices;y<g->vertices+g->n;y++) y->ark=NULL;
y=g->vertices;
y->taken=1;
for (a=y->arcs;a;a=a->next) a->tip->deg--;
t=y;

@ The top of the backtrack loop is |advance|; we come back to it with
|v| the newest vertex on the path. Cursor |ark| tells where the scan
of |v|'s arcs left off, or is null at a fresh vertex; predecessor
links |vert| will guide the retreat when we back up.

@<Run through all the circuits@>=
t->ark=NULL;@+
v=y;@+
goto advance;
advance: @<If the path is complete, count a circuit@>;
if (v->ark) a=v->ark->next;
else a=v->arcs;
@<Try the next untaken neighbor, or back up@>;

@ When every vertex is taken, we check whether the path closes up into
a circuit through vertex 0; each circuit is found twice.

@<If the path is complete, count a circuit@>=
{ register int d=0;
  for (t=g->vertices;t<g->vertices+g->n;t++) if (not_taken(t)) d++;
  if (d==0)
    for (a=v->arcs;a;a=a->next)
      if (a->tip==g->vertices) count++;
}

@ Taking a step decreases the degree of each neighbor of the new
vertex, because |taken| vertices no longer count.

@<Take a step forward@>=
{ y=a->tip; y->taken=1;
  for (a=y->arcs;a;a=a->next) if (not_taken(a->tip)) a->tip->deg--;
  y->vert=t; v=y;
}

@ We try the outgoing arcs of |t|'s successor in turn; when the scan
runs off the end, it is time to back up.

@<Try the next untaken neighbor, or back up@>=
while (a&&!not_taken(a->tip)) a=a->next;
v->ark=a;
if (a) {
  t=v; @<Take a step forward@>; goto advance;
}
@<Back up, or report the total and quit@>;

@* Finishing up. When the path retreats past vertex 0, the search is
over and we print the grand total, remembering that each circuit was
found once in each direction. Otherwise we restore the degrees that
were reduced when the endpoint was taken, free the endpoint, and
resume the scan at its predecessor.

@<Back up, or report the total and quit@>=
if (v==g->vertices) {
  printf("Altogether %ld circuits.\n",count/2);
  return 0;
}
t=v->vert;
for (a=t->arcs;a;a=a->next) if (not_taken(a->tip)) a->tip->deg++;
v->taken=0;
v=t;
goto advance;
)lw";
}

std::string ham_bux_text() {
  return "@i gb_graph.hux\n@i gb_save.hux\n";
}

std::string gb_graph_hux_text() {
  return R"hux(@$Vertex {GB_GRAPH}9 =\&{struct}@>
@$Arc {GB_GRAPH}10 =\&{struct}@>
@$Graph {GB_GRAPH}20 =\&{struct}@>
@$util {GB_GRAPH}8 =\&{union}@>
@$vertices {GB_GRAPH}20 \&{Vertex} $*$@>
@$n {GB_GRAPH}20 \&{long}@>
@$arcs {GB_GRAPH}9 \&{Arc} $*$@>
@$name {GB_GRAPH}9 \&{char} $*$@>
@$next {GB_GRAPH}10 \&{Arc} $*$@>
@$tip {GB_GRAPH}10 \&{Vertex} $*$@>
@$I {GB_GRAPH}8 \&{long}@>
@$V {GB_GRAPH}8 \&{struct} \\{vertex_struct} $*$@>
@$A {GB_GRAPH}8 \&{struct} \\{arc_struct} $*$@>
)hux";
}

std::string gb_save_hux_text() {
  return "@$restore_graph {GB_SAVE}4 \\&{Graph} $*(\\,)$@>\n";
}

std::string system_bux_text() {
  return R"bux(@$printf "<stdio.h>" \&{int} (\,)@>
@$NULL "<stdio.h>" \zip@>
@$FILE "<stdio.h>" \zip@>
)bux";
}

void write_ham_corpus(const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto write_file = [&](const char* name, const std::string& text) {
    std::ofstream out(dir / name, std::ios::binary);
    out << text;
    if (!out)
      throw Error(ErrorKind::io_failure,
                  "cannot write " + (dir / name).string());
  };
  write_file("ham.lw", build_ham_corpus());
  write_file("ham.bux", ham_bux_text());
  write_file("gb_graph.hux", gb_graph_hux_text());
  write_file("gb_save.hux", gb_save_hux_text());
  write_file("system.bux", system_bux_text());
}

}  // namespace miniweave
