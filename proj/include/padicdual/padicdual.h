/* C interface to the padicdual library.
 *
 * Every call returns a pd_status. On failure a description is available from
 * pd_last_error() (per thread, valid until the next call on that thread).
 * Strings handed out through char** parameters are JSON documents owned by the
 * caller and must be released with pd_string_free. Vectors are passed as
 * comma-separated rationals ("1/5,1/5"); lists of vectors separate vectors
 * with ';'. */
#ifndef PADICDUAL_H
#define PADICDUAL_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(PADICDUAL_BUILDING)
#define PD_API __attribute__((visibility("default")))
#else
#define PD_API
#endif

typedef enum pd_status {
  PD_OK = 0,
  PD_ERR_PARSE,
  PD_ERR_INVALID_ARGUMENT,
  PD_ERR_DIMENSION,
  PD_ERR_SINGULAR,
  PD_ERR_NOT_MEMBER,
  PD_ERR_PRECISION,
  PD_ERR_NOT_CONTRACTIVE,
  PD_ERR_NOT_FOUND,
  PD_ERR_NON_UNIT,
  PD_ERR_INTERNAL
} pd_status;

typedef struct pd_form pd_form;

PD_API const char* pd_version(void);
PD_API const char* pd_status_name(pd_status status);
PD_API const char* pd_last_error(void);
PD_API void pd_string_free(char* s);

/* Loads a group spec or an inductive-limit spec. precision <= 0 keeps the
 * document's precision (32 when absent). Forms violating the factored-form
 * conditions are rejected with PD_ERR_INVALID_ARGUMENT. */
PD_API pd_status pd_form_load(const char* json_text, int precision, pd_form** out);
/* Like pd_form_load but accepts invalid forms and reports every violation:
 * {"ok": bool, "violations": [{"p": 3, "condition": "..."}]}. */
PD_API pd_status pd_form_validate(const char* json_text, int precision, int* ok, char** out_json);
PD_API void pd_form_free(pd_form* form);
PD_API int pd_form_rank(const pd_form* form);
PD_API int pd_form_precision(const pd_form* form);
/* Group-spec document; p = 0 lists every exceptional prime. */
PD_API pd_status pd_form_to_json(const pd_form* form, unsigned long p, char** out_json);
/* Dual module of an inductive limit as a group-spec document. p = 0 covers
 * every prime dividing det(A); otherwise only p is reported, including the
 * identity when p does not divide det(A). */
PD_API pd_status pd_dual(const char* limit_json, unsigned long p, int precision, char** out_json);

PD_API pd_status pd_member(const pd_form* form, const char* v, int* verdict, char** out_json);
PD_API pd_status pd_metric(const pd_form* form, unsigned long p, const char* v, char** out_json);
PD_API pd_status pd_divisible(const pd_form* form, unsigned long p, long k, const char* v, int* verdict,
                              char** out_json);
PD_API pd_status pd_in_gp(const pd_form* form, unsigned long p, const char* v, int* verdict, char** out_json);
PD_API pd_status pd_simple(const pd_form* form, unsigned long p, char** out_json);
PD_API pd_status pd_phi(const pd_form* form, unsigned long p, const char* v, char** out_json);
PD_API pd_status pd_quotient(const pd_form* form, unsigned long p, int k, char** out_json);
PD_API pd_status pd_type(const pd_form* form, char** out_json);

/* V maps rank(a) coordinates to rank(b) coordinates: a JSON matrix, the word
 * "identity", or one rational meaning a multiple of the identity. */
PD_API pd_status pd_hom(const pd_form* a, const pd_form* b, const char* v, int* verdict, char** out_json);
/* With v == NULL only rank-one forms are accepted; the decision then comes
 * from the types and a witness is reported and verified. */
PD_API pd_status pd_iso(const pd_form* a, const pd_form* b, const char* v, int* verdict, char** out_json);

/* values: comma-separated p-adic literals, one per generator. */
PD_API pd_status pd_extend(const pd_form* form, unsigned long p, const char* gens, const char* values,
                           char** out_json);
PD_API pd_status pd_admissible(const pd_form* form, unsigned long p, const char* gens, const char* values,
                               const char* at, char** out_json);
PD_API pd_status pd_separate(const pd_form* form, unsigned long p, const char* h_gens, const char* g, long m,
                             char** out_json);
/* coefficients: comma-separated p-adic literals over the rows of A_p. */
PD_API pd_status pd_evaluate(const pd_form* form, unsigned long p, const char* coefficients, const char* v,
                             char** out_json);

/* Brute-force cross-checks; the form must come from an inductive-limit spec. */
PD_API pd_status pd_oracle_divisible(const pd_form* form, unsigned long p, long k, const char* v, int* verdict,
                                     char** out_json);
PD_API pd_status pd_oracle_quotient(const pd_form* form, unsigned long p, int k, char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* PADICDUAL_H */
